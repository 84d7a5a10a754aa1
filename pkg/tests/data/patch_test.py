# -*- coding: utf-8 -*-


"""
Test suite for the Patch class and its file formats
"""


import pathlib

import pytest
import numpy as np


def test_patch_attributes(rng):
    from dynapatch.data.patch import Patch
    pixels = rng.uniform(size=(3, 4, 6))
    patch = Patch(pixels, 1, angle_subset=(-5, 5), loss_kind='obj',
                  seed=3, iterations=7)
    assert patch.shape == (3, 4, 6)
    assert patch.angle_subset == (-5.0, 5.0)
    assert np.array_equal(patch.values, pixels)
    assert not patch.pixels.requires_grad
    assert patch.metadata == {'slot': 1, 'angle_subset': [-5.0, 5.0],
                              'loss_kind': 'obj', 'seed': 3,
                              'iterations': 7}


def test_patch_rejects_invalid_shape():
    from dynapatch.data.patch import Patch
    from dynapatch.utils.exceptions import PatchFileError
    with pytest.raises(PatchFileError) as exception:
        Patch(np.zeros((4, 4)), 0)
    assert "must have shape (3, h, w)" in str(exception.value)


def test_detach_returns_constant_copy(rng):
    from dynapatch.data.patch import random_patch
    patch = random_patch(rng, 0, 2, 3, (0.3, 0.7))
    assert patch.pixels.requires_grad
    assert np.all((patch.values >= 0.3) & (patch.values <= 0.7))
    detached = patch.detach()
    assert not detached.pixels.requires_grad
    detached.values[...] = 0.0
    assert np.all(patch.values >= 0.3)


def test_exact_round_trip(tmpdir, rng):
    from dynapatch.data.patch import Patch
    stem = pathlib.Path(tmpdir) / 'patch'
    patch = Patch(rng.uniform(size=(3, 4, 5)), 0, angle_subset=(0.0, 10.0),
                  loss_kind='cls', seed=1, iterations=12)
    written = patch.write(stem)
    assert [p.suffix for p in written] == ['.ppm', '.json', '.pfpatch']
    restored = Patch.read(stem)
    assert np.array_equal(restored.values, patch.values)
    assert restored.metadata == patch.metadata


def test_image_only_round_trip_is_quantized(tmpdir, rng):
    from dynapatch.data.patch import Patch
    stem = pathlib.Path(tmpdir) / 'patch'
    patch = Patch(rng.uniform(size=(3, 4, 5)), 1)
    written = patch.write(stem, exact=False)
    assert len(written) == 2
    restored = Patch.read(stem)
    assert restored.slot == 1
    assert np.max(np.abs(restored.values - patch.values)) <= 0.5 / 255.0 + \
        1.0E-12


def test_read_errors(tmpdir, rng):
    import json
    from dynapatch.data.patch import Patch
    from dynapatch.utils.exceptions import PatchFileError
    stem = pathlib.Path(tmpdir) / 'patch'
    with pytest.raises(PatchFileError) as exception:
        Patch.read(stem)
    assert "missing patch metadata file" in str(exception.value)
    with open(stem.with_suffix('.json'), 'w') as metadata_file:
        json.dump({'slot': 0}, metadata_file)
    with pytest.raises(PatchFileError) as exception:
        Patch.read(stem)
    assert "missing patch image" in str(exception.value)
    Patch(rng.uniform(size=(3, 2, 2)), 0).write(stem)
    with open(stem.with_suffix('.json'), 'w') as metadata_file:
        json.dump({'loss_kind': 'obj'}, metadata_file)
    with pytest.raises(PatchFileError) as exception:
        Patch.read(stem)
    assert "lacks required key 'slot'" in str(exception.value)
    stem.with_suffix('.json').write_text('{not json')
    with pytest.raises(PatchFileError) as exception:
        Patch.read(stem)
    assert "unable to parse patch metadata" in str(exception.value)


def test_exact_format_errors(tmpdir):
    from dynapatch.data.patch import read_exact, write_exact
    from dynapatch.utils.exceptions import PatchFileError
    path = pathlib.Path(tmpdir) / 'patch.pfpatch'
    write_exact(path, np.zeros((3, 2, 2)))
    assert read_exact(path).shape == (3, 2, 2)
    content = path.read_bytes()
    path.write_bytes(content[:-8])
    with pytest.raises(PatchFileError) as exception:
        read_exact(path)
    assert "requires 96" in str(exception.value)
    path.write_bytes(b'PFPATCH v2\nshape 3 2 2\n')
    with pytest.raises(PatchFileError) as exception:
        read_exact(path)
    assert "invalid patch file header" in str(exception.value)
    path.write_bytes(b'PFPATCH v1\nsize 3 2 2\n')
    with pytest.raises(PatchFileError) as exception:
        read_exact(path)
    assert "invalid shape record" in str(exception.value)
