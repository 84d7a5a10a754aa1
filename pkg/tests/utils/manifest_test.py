# -*- coding: utf-8 -*-


"""
Test suite for the run manifest
"""


import json
import pathlib


def test_file_digest(tmpdir):
    import hashlib
    from dynapatch.utils.manifest import file_digest
    path = pathlib.Path(tmpdir) / 'data.bin'
    path.write_bytes(b'dynamic patches')
    assert file_digest(path) == hashlib.sha256(b'dynamic patches').hexdigest()


def test_manifest_contents(tmpdir):
    from dynapatch import __version__
    from dynapatch.utils.config import RunConfig
    from dynapatch.utils.manifest import RunManifest, file_digest
    root = pathlib.Path(tmpdir)
    (root / 'sub').mkdir()
    output = root / 'sub' / 'out.txt'
    output.write_text('result')
    external = pathlib.Path(tmpdir) / 'input.txt'
    external.write_text('input')
    config = RunConfig({'seed': 4})
    manifest = RunManifest('craft', config)
    manifest.add_inputs([external])
    manifest.add_outputs([output, root / 'missing.txt'])
    manifest.results['success_rate'] = 50.0
    manifest.logs['craft'] = [[0, 1.0, 0.1, 0.9]]
    contents = manifest.as_dict(root / 'sub')
    assert contents['command'] == 'craft'
    assert contents['version'] == __version__
    assert contents['seed'] == 4
    assert contents['config_hash'] == config.digest
    # outputs are keyed relative to the root, missing files are skipped
    assert contents['outputs'] == {'out.txt': file_digest(output)}
    assert contents['inputs'] == {str(external): file_digest(external)}
    assert contents['results'] == {'success_rate': 50.0}
    assert contents['wall_time'] >= 0.0


def test_manifest_write(tmpdir):
    from dynapatch.utils.config import RunConfig
    from dynapatch.utils.manifest import RunManifest
    root = pathlib.Path(tmpdir)
    manifest = RunManifest('gen-dataset', RunConfig())
    path = manifest.write(root)
    assert path == root / 'manifest.json'
    with open(path, 'r') as manifest_file:
        contents = json.load(manifest_file)
    assert contents['command'] == 'gen-dataset'
    assert contents['config']['screens'] == 2
    assert contents['outputs'] == {}
