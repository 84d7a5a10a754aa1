# -*- coding: utf-8 -*-


"""
Commands crafting static patches and dynamic patch plans
"""


import click

from dynapatch.cli import dynapatch
from dynapatch.utils.decorators import domain_errors


LOSS_CHOICES = ['cls', 'obj', 'obj_cls', 'semantic', 'all']

# loss kinds compared by `--loss-kind all`
COMPARED_LOSSES = ('obj', 'cls', 'obj_cls')


def selected_losses(loss_kind, config):
    if loss_kind == 'all':
        return list(COMPARED_LOSSES)
    return [loss_kind or config['loss_kind']]


def evaluate_plan(test, plan, detector, attack_config):
    from dynapatch.evaluation.metrics import (attack_success_rate,
                                              semantic_success_rate)

    if attack_config.loss_kind == 'semantic':
        return semantic_success_rate(test, plan, detector,
                                     attack_config.semantic_classes)
    return attack_success_rate(test, plan, detector,
                               attack_config.target_class)


def write_results(directory, plan, report, log=None):
    """
    Write plan, report and objective log of one loss kind.
    """
    import csv

    from dynapatch.utils.defaults import FileDefaults

    directory.mkdir(parents=True, exist_ok=True)
    written = plan.write(directory)
    written.append(report.write_json(directory /
                                     FileDefaults.FNAMES['report']))
    written.append(report.write_csv(directory /
                                    FileDefaults.FNAMES['frames']))
    if log is not None:
        log_path = directory / FileDefaults.FNAMES['objective']
        with open(log_path, 'w', newline='') as log_file:
            writer = csv.writer(log_file, lineterminator='\n')
            writer.writerow(['bin', 'epoch', 'objective', 'tv', 'loss'])
            for (index, record) in log:
                writer.writerow([index, record.epoch, repr(record.objective),
                                 repr(record.tv), repr(record.loss)])
        written.append(log_path)
    return written


@dynapatch.command('craft')
@click.argument('dataset_dir', nargs=1, type=click.Path(exists=True,
                file_okay=False))
@click.argument('weights', nargs=1, type=click.Path(dir_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@click.option('--loss-kind', '-l', type=click.Choice(LOSS_CHOICES),
              default=None,
              help=("Attack loss (overrides the config); 'all' compares "
                    "obj, cls and obj_cls with identical seeds."))
@click.pass_context
@domain_errors
def craft(ctx, dataset_dir, weights, out_dir, loss_kind):
    """
    Craft one static patch set for the whole view angle range.

    Patches are crafted on the train split of DATASET_DIR against the
    detector stored in WEIGHTS and evaluated on the test split. Every loss
    kind writes its patches (as single-bin plan), the evaluation report
    and the objective log to OUT_DIR/<loss-kind>.
    """
    from tabulate import tabulate

    from dynapatch.attack.crafting import craft_patches
    from dynapatch.cli.common import (finish_run, load_config, read_frames,
                                      split_inputs, start_run)
    from dynapatch.data.plan import SplitPlan
    from dynapatch.detector.weights import read_weights

    config = load_config(ctx)
    detector = read_weights(weights)
    spec = config.scene_spec()
    train = read_frames(dataset_dir, 'train', screens_only=True)
    test = read_frames(dataset_dir, 'test')
    inputs = ([weights] + split_inputs(dataset_dir, 'train') +
              split_inputs(dataset_dir, 'test'))
    out_dir, manifest = start_run('craft', config, out_dir, inputs)
    angle_range = (spec.angle_min, spec.angle_max)
    tab_entries = []
    for kind in selected_losses(loss_kind, config):
        attack_config = config.attack_config(loss_kind=kind)
        result = craft_patches(train, len(spec.screen_slots), attack_config,
                               detector, angle_subset=angle_range)
        plan = SplitPlan.single(result.patches, angle_range)
        report = evaluate_plan(test, plan, detector, attack_config)
        plan.rate = report.success_rate
        manifest.add_outputs(write_results(out_dir / kind, plan, report,
                                           [(0, r) for r in result.log]))
        manifest.logs[kind] = result.log_rows()
        manifest.results[kind] = {'success_rate': report.success_rate,
                                  'warnings': result.warnings}
        tab_entries.append([kind, len(train), report.frame_count,
                            result.final_objective,
                            "{:.2f}".format(report.success_rate)])
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['loss', 'train frames',
                                              'test frames',
                                              'final objective',
                                              'success rate (%)'],
                        tablefmt='simple'))
    finish_run(manifest, out_dir)


@dynapatch.command('dynamic')
@click.argument('dataset_dir', nargs=1, type=click.Path(exists=True,
                file_okay=False))
@click.argument('weights', nargs=1, type=click.Path(dir_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@click.option('--loss-kind', '-l', type=click.Choice(LOSS_CHOICES),
              default=None,
              help=("Attack loss (overrides the config); 'all' compares "
                    "obj, cls and obj_cls with identical seeds."))
@click.pass_context
@domain_errors
def dynamic(ctx, dataset_dir, weights, out_dir, loss_kind):
    """
    Search the number of view angle bins with their own patch sets.

    Starting from a single patch set the angle range is split into more
    and more equal-width bins as long as the switched patches improve the
    success rate on the test split. The chosen plan of every loss kind is
    written to OUT_DIR/<loss-kind>.
    """
    from tabulate import tabulate

    from dynapatch.cli.common import (finish_run, load_config, read_frames,
                                      split_inputs, start_run)
    from dynapatch.data.frame import sort_by_angle
    from dynapatch.detector.weights import read_weights
    from dynapatch.workflows.dynamic_split import DynamicSplitSearch

    config = load_config(ctx)
    detector = read_weights(weights)
    spec = config.scene_spec()
    train = sort_by_angle(read_frames(dataset_dir, 'train',
                                      screens_only=True))
    test = sort_by_angle(read_frames(dataset_dir, 'test'))
    inputs = ([weights] + split_inputs(dataset_dir, 'train') +
              split_inputs(dataset_dir, 'test'))
    out_dir, manifest = start_run('dynamic', config, out_dir, inputs)
    tab_entries = []
    for kind in selected_losses(loss_kind, config):
        attack_config = config.attack_config(loss_kind=kind)
        search = DynamicSplitSearch(train, test, len(spec.screen_slots),
                                    attack_config, detector,
                                    angle_range=(spec.angle_min,
                                                 spec.angle_max))
        plan = search.run()
        report = evaluate_plan(test, plan, detector, attack_config)
        manifest.add_outputs(write_results(out_dir / kind, plan, report))
        manifest.results[kind] = {
            'subset_count': plan.subset_count,
            'success_rate': plan.rate,
            'rates_by_subset_count': [list(h) for h in plan.history],
            'warnings': search.warnings,
        }
        for (count, rate) in plan.history:
            tab_entries.append([kind, count, "{:.2f}".format(rate),
                                '*' if count == plan.subset_count else ''])
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['loss', 'k',
                                              'success rate (%)', 'chosen'],
                        tablefmt='simple'))
    finish_run(manifest, out_dir)
