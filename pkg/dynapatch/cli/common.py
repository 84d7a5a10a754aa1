# -*- coding: utf-8 -*-


"""
Helpers shared by the command implementations.
"""


import os
import pathlib

import click

from dynapatch.data.patch import Patch
from dynapatch.data.plan import SplitPlan
from dynapatch.parsers.frame_parser import read_split
from dynapatch.utils.config import RunConfig
from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import CommandLineError
from dynapatch.utils.manifest import RunManifest


def load_config(ctx):
    """
    Assemble the run configuration from file, environment and overrides.

    :rtype: :class:`~dynapatch.utils.config.RunConfig`
    """
    options = ctx.find_root().obj or {}
    path = options.get('config_path')
    config = RunConfig.from_file(path) if path else RunConfig()
    config.apply_environment(os.environ)
    config.apply_overrides(options.get('overrides', []))
    return config


def output_directory(path):
    path = pathlib.Path(path)
    if path.exists() and not path.is_dir():
        raise CommandLineError("output location '{}' is not a directory"
                               .format(path))
    path.mkdir(parents=True, exist_ok=True)
    return path


def start_run(command, config, out_dir, inputs=()):
    """
    Create the output directory, store the configuration and open the run
    manifest.

    :returns: (output directory, manifest)
    """
    out_dir = output_directory(out_dir)
    manifest = RunManifest(command, config)
    manifest.add_inputs(inputs)
    config_path = config.write(out_dir / FileDefaults.FNAMES['config'])
    manifest.add_outputs([config_path])
    return out_dir, manifest


def finish_run(manifest, out_dir):
    path = manifest.write(out_dir, FileDefaults.FNAMES['manifest'])
    click.echo("")
    click.echo("Run manifest written to {}".format(path))
    return path


def split_inputs(dataset_dir, split):
    """
    Files of a stored split (used as manifest inputs).
    """
    split_dir = pathlib.Path(dataset_dir) / split
    if not split_dir.is_dir():
        return []
    return sorted(p for p in split_dir.iterdir() if p.is_file())


def read_frames(dataset_dir, split, screens_only=False):
    frames = read_split(dataset_dir, split)
    if screens_only:
        frames = [f for f in frames if f.screens]
    return frames


def plan_inputs(plan_dirs):
    inputs = []
    for directory in plan_dirs:
        inputs.extend(sorted(p for p in pathlib.Path(directory).iterdir()
                             if p.is_file()))
    return inputs


def load_patches_or_plan(plan_dirs, patch_stems):
    """
    Read and concatenate plans or read single patches.

    :returns: a plan, a list of patches or None if nothing was given
    :raises CommandLineError: if plans and patches are mixed
    """
    if plan_dirs and patch_stems:
        raise CommandLineError("use either --plan or --patch, not both")
    if plan_dirs:
        return SplitPlan.concatenate([SplitPlan.read(d) for d in plan_dirs])
    if patch_stems:
        return [Patch.read(stem) for stem in patch_stems]
    return None
