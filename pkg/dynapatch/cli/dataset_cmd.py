# -*- coding: utf-8 -*-


"""
Command generating the synthetic frame datasets
"""


import click

from dynapatch.cli import dynapatch
from dynapatch.utils.decorators import domain_errors


@dynapatch.command('gen-dataset')
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@click.option('--frames-per-degree', type=click.FloatRange(min=0.0,
              min_open=True), default=None,
              help="Frame density of every split (overrides the config).")
@click.option('--mark-corners', is_flag=True, default=False,
              help=("Mark screen corners with sentinel pixels instead of "
                    "storing their sub-pixel coordinates."))
@click.pass_context
@domain_errors
def gen_dataset(ctx, out_dir, frames_per_degree, mark_corners):
    """
    Render the train, test and detector splits into OUT_DIR.

    Every frame is written as binary PPM image with a text sidecar holding
    the view angle, the screen corners and the ground-truth box; every
    split gets an index file listing its frames in angle order.
    """
    from tabulate import tabulate

    from dynapatch.cli.common import finish_run, load_config, start_run
    from dynapatch.scenegen.dataset import generate_dataset, write_dataset
    from dynapatch.utils.defaults import FileDefaults

    config = load_config(ctx)
    if frames_per_degree is not None:
        config.update({'frames_per_degree': frames_per_degree})
    spec = config.scene_spec()
    out_dir, manifest = start_run('gen-dataset', config, out_dir)
    tab_entries = []
    for split in FileDefaults.SPLITS:
        frames = generate_dataset(spec, split, config.seed)
        manifest.add_outputs(write_dataset(frames, out_dir, split,
                                           mark=mark_corners))
        with_screens = sum(1 for f in frames if f.screens)
        tab_entries.append([split, len(frames), with_screens])
    manifest.results['frames'] = {row[0]: row[1] for row in tab_entries}
    manifest.results['marked_corners'] = mark_corners
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['split', 'frames',
                                              'with screens'],
                        tablefmt='simple'))
    click.echo("")
    click.echo("Dataset written to {}".format(out_dir.absolute()))
    finish_run(manifest, out_dir)
