# -*- coding: utf-8 -*-


"""
Commands evaluating patches: success rates, heatmaps, the screen size
sweep and transferability
"""


import click

from dynapatch.cli import dynapatch
from dynapatch.utils.decorators import domain_errors


def plan_option(command):
    command = click.option(
        '--plan', '-p', 'plan_dirs', multiple=True,
        type=click.Path(exists=True, file_okay=False),
        help=("Plan directory; repeated plans are concatenated in the "
              "given order."))(command)
    command = click.option(
        '--patch', 'patch_stems', multiple=True, type=str,
        help=("Patch file stem (without suffix) shown on every frame; may "
              "be repeated for multiple screens."))(command)
    return command


def echo_report(report):
    from tabulate import tabulate

    tab_entries = [[report.label, report.loss_kind or '-',
                    report.frame_count, report.success_count,
                    "{:.2f}".format(report.success_rate)]]
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['label', 'loss', 'frames',
                                              'successes',
                                              'success rate (%)'],
                        tablefmt='simple'))
    if report.boundaries is not None and len(report.boundaries) > 2:
        bins = zip(report.boundaries[:-1], report.boundaries[1:],
                   report.bin_rates)
        bin_entries = [["[{:.2f}, {:.2f}]".format(low, high),
                        '-' if rate is None else "{:.2f}".format(rate)]
                       for (low, high, rate) in bins]
        click.echo("")
        click.echo(tabulate(bin_entries, headers=['angle bin',
                                                  'success rate (%)'],
                            tablefmt='simple'))


def write_report(report, directory, stem):
    from dynapatch.utils.defaults import FileDefaults

    json_name = FileDefaults.FNAMES['report'].replace('report', stem)
    csv_name = FileDefaults.FNAMES['frames'].replace('frames',
                                                     stem + '_frames')
    return [report.write_json(directory / json_name),
            report.write_csv(directory / csv_name)]


@dynapatch.command('eval')
@click.argument('dataset_dir', nargs=1, type=click.Path(exists=True,
                file_okay=False))
@click.argument('weights', nargs=1, type=click.Path(dir_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@plan_option
@click.option('--semantic', is_flag=True, default=False,
              help="Score frames with the semantic class set.")
@click.option('--split', type=click.Choice(['train', 'test']),
              default='test', help="Evaluated dataset split.")
@click.pass_context
@domain_errors
def evaluate(ctx, dataset_dir, weights, out_dir, plan_dirs, patch_stems,
             semantic, split):
    """
    Evaluate patches or plans on a dataset split.

    Without any --plan or --patch the clean baseline is reported.
    """
    from dynapatch.cli.common import (finish_run, load_config,
                                      load_patches_or_plan, plan_inputs,
                                      read_frames, split_inputs, start_run)
    from dynapatch.detector.weights import read_weights
    from dynapatch.evaluation.metrics import (attack_success_rate,
                                              semantic_success_rate)

    config = load_config(ctx)
    detector = read_weights(weights)
    patches_or_plan = load_patches_or_plan(plan_dirs, patch_stems)
    frames = read_frames(dataset_dir, split)
    inputs = [weights] + split_inputs(dataset_dir, split) + \
        plan_inputs(plan_dirs)
    out_dir, manifest = start_run('eval', config, out_dir, inputs)
    if semantic:
        report = semantic_success_rate(frames, patches_or_plan, detector,
                                       config['semantic_classes'])
    else:
        report = attack_success_rate(frames, patches_or_plan, detector,
                                     config['target_class'])
    manifest.add_outputs(write_report(report, out_dir, 'report'))
    manifest.results = {'success_rate': report.success_rate,
                        'bin_rates': report.bin_rates}
    echo_report(report)
    finish_run(manifest, out_dir)


@dynapatch.command('heatmap')
@click.argument('dataset_dir', nargs=1, type=click.Path(exists=True,
                file_okay=False))
@click.argument('weights', nargs=1, type=click.Path(dir_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@plan_option
@click.option('--frame', '-f', 'frame_name', type=str, default=None,
              help="Name of the test frame (default: first target frame).")
@click.pass_context
@domain_errors
def heatmap(ctx, dataset_dir, weights, out_dir, plan_dirs, patch_stems,
            frame_name):
    """
    Write objectness and class maps of a test frame.

    The maps of the clean frame are written as clean_objectness and
    clean_classes (CSV and PPM); if patches or a plan are given the maps
    of the patched frame follow as patched_objectness and patched_classes.
    """
    from tabulate import tabulate

    from dynapatch.cli.common import (finish_run, load_config,
                                      load_patches_or_plan, plan_inputs,
                                      read_frames, split_inputs, start_run)
    from dynapatch.detector.weights import read_weights
    from dynapatch.evaluation.heatmaps import class_map, objectness_heatmap
    from dynapatch.evaluation.metrics import select_patches
    from dynapatch.placement.compositing import place_all
    from dynapatch.utils.exceptions import CommandLineError

    config = load_config(ctx)
    detector = read_weights(weights)
    patches_or_plan = load_patches_or_plan(plan_dirs, patch_stems)
    frames = read_frames(dataset_dir, 'test')
    if frame_name is None:
        candidates = [f for f in frames if f.screens] or frames
    else:
        candidates = [f for f in frames if f.name == frame_name]
    if not candidates:
        raise CommandLineError("no test frame named '{}' in '{}'".format(
            frame_name, dataset_dir))
    frame = candidates[0]
    inputs = [weights] + split_inputs(dataset_dir, 'test') + \
        plan_inputs(plan_dirs)
    out_dir, manifest = start_run('heatmap', config, out_dir, inputs)
    images = [('clean', frame.image)]
    if patches_or_plan is not None:
        _, patches = select_patches(patches_or_plan, frame.angle)
        images.append(('patched', place_all(frame, patches).values))
    tab_entries = []
    for (stem, image) in images:
        objectness = objectness_heatmap(detector, image)
        classes = class_map(detector, image)
        for (name, grid) in (('objectness', objectness),
                             ('classes', classes)):
            base = out_dir / "{}_{}".format(stem, name)
            manifest.add_outputs([grid.write_csv(base.with_suffix('.csv')),
                                  grid.write_ppm(base.with_suffix('.ppm'))])
        labels = classes.values.reshape(-1)
        target_cells = int((labels == config['target_class']).sum())
        tab_entries.append([stem, "{:.4f}".format(objectness.total),
                            target_cells])
        manifest.results[stem] = {'objectness_total': objectness.total,
                                  'target_class_cells': target_cells}
    manifest.results['frame'] = frame.name
    click.echo("")
    click.echo("Frame {} at angle {:.3f} degrees".format(frame.name,
                                                          frame.angle))
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['image', 'objectness sum',
                                              'target class cells'],
                        tablefmt='simple'))
    finish_run(manifest, out_dir)


@dynapatch.command('sweep')
@click.argument('weights', nargs=1, type=click.Path(dir_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@click.option('--ratios', '-r', type=str, default='0,0.05,0.1,0.15,0.25',
              show_default=True,
              help="Comma separated screen area / back face area ratios.")
@click.pass_context
@domain_errors
def sweep(ctx, weights, out_dir, ratios):
    """
    Success rate of a single back screen patch for several screen sizes.

    For every ratio the train and test splits are rendered with a resized
    back screen, one obj_cls patch is crafted and evaluated. The results
    are written to OUT_DIR/sweep.csv.
    """
    from tabulate import tabulate

    from dynapatch.cli.common import finish_run, load_config, start_run
    from dynapatch.detector.weights import read_weights
    from dynapatch.utils.defaults import FileDefaults
    from dynapatch.utils.exceptions import CommandLineError
    from dynapatch.workflows.screen_sweep import (screen_size_sweep,
                                                  write_sweep_csv)

    try:
        ratio_values = [float(r) for r in ratios.split(',') if r.strip()]
    except ValueError:
        raise CommandLineError("invalid ratio list '{}'".format(ratios))
    if not ratio_values:
        raise CommandLineError("no screen ratios given")
    config = load_config(ctx)
    detector = read_weights(weights)
    out_dir, manifest = start_run('sweep', config, out_dir, [weights])
    rows = screen_size_sweep(config.scene_spec(), ratio_values,
                             config.attack_config(), detector,
                             seed=config.seed)
    manifest.add_outputs([write_sweep_csv(
        rows, out_dir / FileDefaults.FNAMES['sweep'])])
    manifest.results['sweep'] = [list(row) for row in rows]
    click.echo("")
    click.echo(tabulate([[r.ratio, "{:.2f}".format(r.success_rate), r.frames]
                         for r in rows],
                        headers=['ratio', 'success rate (%)', 'frames'],
                        tablefmt='simple'))
    finish_run(manifest, out_dir)


@dynapatch.command('transfer')
@click.argument('dataset_dir', nargs=1, type=click.Path(exists=True,
                file_okay=False))
@click.argument('weights', nargs=1, type=click.Path(dir_okay=False))
@click.argument('out_dir', nargs=1, type=click.Path(file_okay=False))
@plan_option
@click.option('--other-weights', type=click.Path(dir_okay=False),
              default=None, help="Weights of an independently trained "
              "detector.")
@click.option('--variant', type=str, default=None,
              help="Target variant the patches are evaluated on.")
@click.pass_context
@domain_errors
def transfer(ctx, dataset_dir, weights, out_dir, plan_dirs, patch_stems,
             other_weights, variant):
    """
    Evaluate patches crafted against WEIGHTS on another detector and / or
    another target variant.

    The white-box rate on the test split of DATASET_DIR is reported
    alongside for comparison.
    """
    from tabulate import tabulate

    from dynapatch.cli.common import (finish_run, load_config,
                                      load_patches_or_plan, plan_inputs,
                                      read_frames, split_inputs, start_run)
    from dynapatch.detector.weights import read_weights
    from dynapatch.evaluation.metrics import attack_success_rate
    from dynapatch.evaluation.transfer import (cross_model_eval,
                                               cross_object_eval)
    from dynapatch.utils.exceptions import CommandLineError

    if other_weights is None and variant is None:
        raise CommandLineError("transfer requires --other-weights and / or "
                               "--variant")
    config = load_config(ctx)
    target_class = config['target_class']
    detector = read_weights(weights)
    patches_or_plan = load_patches_or_plan(plan_dirs, patch_stems)
    frames = read_frames(dataset_dir, 'test')
    inputs = [weights] + split_inputs(dataset_dir, 'test') + \
        plan_inputs(plan_dirs)
    if other_weights is not None:
        inputs.append(other_weights)
    out_dir, manifest = start_run('transfer', config, out_dir, inputs)
    reports = [('white-box', attack_success_rate(
        frames, patches_or_plan, detector, target_class))]
    if other_weights is not None:
        reports.append(('transfer', cross_model_eval(
            frames, patches_or_plan, read_weights(other_weights),
            target_class)))
    if variant is not None:
        reports.append(('transfer-object', cross_object_eval(
            config.scene_spec(), variant, patches_or_plan, detector,
            target_class, config.seed)))
    tab_entries = []
    for (stem, report) in reports:
        manifest.add_outputs(write_report(report, out_dir,
                                          stem.replace('-', '_')))
        manifest.results[stem] = report.success_rate
        tab_entries.append([stem, report.frame_count,
                            "{:.2f}".format(report.success_rate)])
    click.echo("")
    click.echo(tabulate(tab_entries, headers=['evaluation', 'frames',
                                              'success rate (%)'],
                        tablefmt='simple'))
    finish_run(manifest, out_dir)
