# -*- coding: utf-8 -*-


"""
Command training the grid detector
"""


import click

from dynapatch.cli import dynapatch
from dynapatch.utils.decorators import domain_errors


@dynapatch.command('train-detector')
@click.argument('dataset_dir', nargs=1, type=click.Path(exists=True,
                file_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@click.pass_context
@domain_errors
def train_detector_cmd(ctx, dataset_dir, out_dir):
    """
    Train a detector on the detector split of DATASET_DIR.

    The weights are written to OUT_DIR/detector.pfdet. If the clean
    detection rate of the target class stays below 95% the weights are
    still written but the command exits with status 1.
    """
    from tabulate import tabulate

    from dynapatch.cli.common import (finish_run, load_config, read_frames,
                                      split_inputs, start_run)
    from dynapatch.detector.network import Detector
    from dynapatch.detector.training import train_detector
    from dynapatch.detector.weights import write_weights
    from dynapatch.utils.defaults import FileDefaults

    config = load_config(ctx)
    frames = read_frames(dataset_dir, 'detector')
    out_dir, manifest = start_run('train-detector', config, out_dir,
                                  split_inputs(dataset_dir, 'detector'))
    detector = Detector.initialize(config.detector_config(), seed=config.seed)
    result = train_detector(detector, frames, config.training_config())
    weights_path = out_dir / FileDefaults.FNAMES['weights']
    write_weights(result.detector, weights_path)
    manifest.add_outputs([weights_path])
    manifest.logs['epoch_losses'] = result.epoch_losses
    manifest.results.update({
        'detection_rate': result.detection_rate,
        'evaluated_frames': result.evaluated_frames,
        'success': result.success,
    })
    tab_entries = [[len(frames), detector.parameter_count,
                    len(result.epoch_losses),
                    result.epoch_losses[-1] if result.epoch_losses else None,
                    "{:.2%}".format(result.detection_rate)]]
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['frames', 'parameters',
                                              'epochs', 'final loss',
                                              'clean detection'],
                        tablefmt='simple'))
    click.echo("")
    click.echo(result.message)
    finish_run(manifest, out_dir)
    if not result.success:
        ctx.exit(1)
