# -*- coding: utf-8 -*-


"""
Run manifests recording configuration, inputs and outputs of a command.
"""


import hashlib
import json
import pathlib
import time

from dynapatch import __version__


def file_digest(path):
    """
    sha256 hex digest of a file's content.
    """
    digest = hashlib.sha256()
    with open(path, 'rb') as data:
        for chunk in iter(lambda: data.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()


def _digests(paths, root):
    digests = {}
    for path in paths:
        path = pathlib.Path(path)
        if not path.is_file():
            continue
        try:
            key = str(path.relative_to(root))
        except ValueError:
            key = str(path)
        digests[key] = file_digest(path)
    return digests


class RunManifest(object):
    """
    Record of a single command run

    All entries except the wall time are reproducible for identical
    configuration and seed.

    :param command: name of the executed command
    :type command: `str`
    :param config: run configuration
    :type config: :class:`~dynapatch.utils.config.RunConfig`
    """

    def __init__(self, command, config):
        self.command = command
        self.config = config
        self.inputs = []
        self.outputs = []
        self.results = {}
        self.logs = {}
        self._start = time.perf_counter()

    def add_inputs(self, paths):
        self.inputs.extend(pathlib.Path(p) for p in paths)

    def add_outputs(self, paths):
        self.outputs.extend(pathlib.Path(p) for p in paths)

    def as_dict(self, root):
        root = pathlib.Path(root)
        return {
            'command': self.command,
            'version': __version__,
            'config': self.config.as_dict(),
            'config_hash': self.config.digest,
            'seed': self.config.seed,
            'inputs': _digests(self.inputs, root),
            'outputs': _digests(self.outputs, root),
            'results': self.results,
            'logs': self.logs,
            'wall_time': time.perf_counter() - self._start,
        }

    def write(self, directory, name='manifest.json'):
        """
        Write the manifest as JSON; output digests are keyed relative to
        the output directory.
        """
        directory = pathlib.Path(directory)
        path = directory / name
        with open(path, 'w') as manifest_file:
            json.dump(self.as_dict(directory), manifest_file, indent=2,
                      sort_keys=True)
            manifest_file.write('\n')
        return path
