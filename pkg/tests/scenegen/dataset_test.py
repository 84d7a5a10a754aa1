# -*- coding: utf-8 -*-


"""
Test suite for the dataset generation and storage
"""


import pathlib

import pytest
import numpy as np


def test_sample_angles_stay_in_sectors(small_scene):
    from dynapatch.scenegen.dataset import sample_angles
    spec = small_scene()
    angles = sample_angles(spec, np.random.default_rng(0))
    assert len(angles) == 8
    spacing = 5.0
    sectors = np.floor((angles - spec.angle_min) / spacing)
    assert list(sectors) == list(range(8))
    assert np.all(np.diff(angles) > 0.0)


def test_sample_angles_without_jitter(small_scene):
    from dynapatch.scenegen.dataset import sample_angles
    spec = small_scene(angle_jitter=0.0)
    angles = sample_angles(spec, np.random.default_rng(0))
    assert np.allclose(angles, -17.5 + 5.0 * np.arange(8))


def test_empty_angle_range(small_scene):
    from dynapatch.scenegen.dataset import generate_dataset
    from dynapatch.utils.exceptions import DatasetError
    spec = small_scene(frames_per_degree=0.01)
    with pytest.raises(DatasetError) as exception:
        generate_dataset(spec, 'train', 0)
    assert "empty angle range" in str(exception.value)


def test_unknown_split(small_scene):
    from dynapatch.scenegen.dataset import generate_dataset
    from dynapatch.utils.exceptions import DatasetError
    with pytest.raises(DatasetError) as exception:
        generate_dataset(small_scene(), 'validation', 0)
    assert "unknown split 'validation'" in str(exception.value)


def test_generation_is_seeded(small_scene):
    from dynapatch.scenegen.dataset import generate_dataset
    spec = small_scene()
    first = generate_dataset(spec, 'train', 4)
    second = generate_dataset(spec, 'train', 4)
    assert [f.angle for f in first] == [f.angle for f in second]
    for (a, b) in zip(first, second):
        assert np.array_equal(a.image, b.image)
    test = generate_dataset(spec, 'test', 4)
    assert [f.angle for f in first] != [f.angle for f in test]
    other_seed = generate_dataset(spec, 'train', 5)
    assert [f.angle for f in first] != [f.angle for f in other_seed]


def test_target_splits(small_scene):
    from dynapatch.scenegen.dataset import generate_dataset
    spec = small_scene()
    frames = generate_dataset(spec, 'test', 0)
    assert [f.name for f in frames] == ["frame_{:04d}".format(i)
                                        for i in range(8)]
    assert all(f.class_id == spec.target_class for f in frames)
    assert [f.angle for f in frames] == sorted(f.angle for f in frames)
    assert all(f.screens for f in frames)


def test_detector_split_alternates_classes(small_scene):
    from dynapatch.scenegen.dataset import generate_dataset
    spec = small_scene()
    frames = generate_dataset(spec, 'detector', 0)
    assert all(f.class_id == spec.target_class for f in frames[::2])
    assert all(f.class_id != spec.target_class for f in frames[1::2])


def test_sidecar_text():
    from dynapatch.data.frame import Frame
    from dynapatch.scenegen.dataset import sidecar_text
    quad = [[1.0, 2.0], [3.0, 2.0], [3.0, 4.0], [1.0, 4.0]]
    frame = Frame(np.zeros((3, 4, 4)), -2.5, screens={1: quad, 0: quad},
                  truths=[(0, (0.5, 0.25, 0.5, 0.5))])
    assert sidecar_text(frame).splitlines() == [
        "angle -2.5",
        "screen 0 1.0 2.0 3.0 2.0 3.0 4.0 1.0 4.0",
        "screen 1 1.0 2.0 3.0 2.0 3.0 4.0 1.0 4.0",
        "truth 0 0.5 0.25 0.5 0.5",
    ]
    assert sidecar_text(frame, marked_slots=[1]).splitlines()[1:3] == [
        "screen 1", "screen 0 1.0 2.0 3.0 2.0 3.0 4.0 1.0 4.0"]


def test_write_dataset_layout(tmpdir, toy_frames):
    from dynapatch.scenegen.dataset import write_dataset
    frames = toy_frames(count=3)
    written = write_dataset(frames, tmpdir, 'train')
    split_dir = pathlib.Path(tmpdir) / 'train'
    assert len(written) == 7
    assert (split_dir / 'frame_0002.ppm').is_file()
    index = (split_dir / 'index.txt').read_text().splitlines()
    assert index == ["frame_0000 {!r}".format(frames[0].angle),
                     "frame_0001 {!r}".format(frames[1].angle),
                     "frame_0002 {!r}".format(frames[2].angle)]
