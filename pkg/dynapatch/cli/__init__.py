# -*- coding: utf-8 -*-


"""
Command line interface of the dynamic patch laboratory
"""


import logging

import click


@click.group('dynapatch')
@click.option('--config', '-c', 'config_path', type=click.Path(exists=True,
              dir_okay=False), default=None,
              help="Flat YAML configuration file.")
@click.option('--set', '-s', 'overrides', multiple=True,
              metavar='KEY=VALUE',
              help=("Override a single configuration key (may be given "
                    "multiple times)."))
@click.option('--verbose', '-v', is_flag=True, default=False,
              help="Print debug messages.")
@click.pass_context
def dynapatch(ctx, config_path, overrides, verbose):
    """
    Craft and evaluate view-angle dependent adversarial patches against a
    miniature grid detector on synthetic scenes.

    The configuration is assembled from the defaults, the optional
    configuration file, the PF_SEED environment variable and the --set
    overrides (in this order).
    """
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.ensure_object(dict)
    ctx.obj['config_path'] = config_path
    ctx.obj['overrides'] = list(overrides)


# register the sub-commands
from dynapatch.cli import dataset_cmd  # noqa: E402,F401
from dynapatch.cli import detector_cmd  # noqa: E402,F401
from dynapatch.cli import attack_cmd  # noqa: E402,F401
from dynapatch.cli import eval_cmd  # noqa: E402,F401
