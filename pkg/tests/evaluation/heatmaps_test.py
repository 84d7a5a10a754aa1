# -*- coding: utf-8 -*-


"""
Test suite for the objectness and class maps
"""


import pytest
import numpy as np


def test_zero_detector_maps(tiny_detector_config):
    from dynapatch.detector.network import Detector
    from dynapatch.evaluation.heatmaps import class_map, objectness_heatmap
    detector = Detector.zeros(tiny_detector_config)
    image = np.full((3, 16, 16), 0.5)
    objectness = objectness_heatmap(detector, image)
    # two boxes of objectness 0.5 in every cell
    assert np.allclose(objectness.values, 1.0)
    assert objectness.total == pytest.approx(4.0)
    assert objectness.grid_size == 2
    classes = class_map(detector, image)
    assert np.array_equal(classes.values, np.zeros((2, 2)))
    assert classes.scale == 3


def test_class_map_maximum_over_boxes(tiny_detector_config):
    from dynapatch.detector.network import Detector
    from dynapatch.evaluation.heatmaps import class_map, objectness_heatmap
    detector = Detector.zeros(tiny_detector_config)
    bias = detector.weights[-1].values
    slot_size = tiny_detector_config.slot_size
    bias[4] = 10.0
    bias[slot_size + 5 + 2] = 3.0
    image = np.zeros((3, 16, 16))
    assert np.array_equal(class_map(detector, image).values,
                          np.full((2, 2), 2))
    expected = 0.5 + 1.0 / (1.0 + np.exp(-10.0))
    assert np.allclose(objectness_heatmap(detector, image).values, expected)


def test_heatmap_images():
    from dynapatch.evaluation.heatmaps import HeatMap
    from dynapatch.utils.defaults import SceneDefaults
    objectness = HeatMap([[0.0, 1.0], [2.0, 3.0]], 'objectness-sum', 2)
    image = objectness.as_image(cell_pixels=4)
    assert image.shape == (3, 8, 8)
    assert np.allclose(image[:, 0, 4], 0.5)
    assert np.allclose(image[:, 7, 7], 1.0)
    classes = HeatMap(np.array([[0, 1], [2, 0]]), 'class-argmax', 3)
    image = classes.as_image(cell_pixels=2)
    assert np.allclose(image[:, 2, 0], SceneDefaults.PALETTE[2])


def test_heatmap_files(tmpdir):
    import pathlib
    from dynapatch.evaluation.heatmaps import HeatMap
    from dynapatch.utils.images import read_ppm
    directory = pathlib.Path(str(tmpdir))
    classes = HeatMap(np.array([[0, 1], [2, 0]]), 'class-argmax', 3)
    classes.write_csv(directory / 'classes.csv')
    assert (directory / 'classes.csv').read_text() == "0,1\n2,0\n"
    objectness = HeatMap([[0.25, 1.0], [2.0, 0.5]], 'objectness-sum', 2)
    objectness.write_csv(directory / 'objectness.csv')
    assert (directory / 'objectness.csv').read_text() == \
        "0.25,1.0\n2.0,0.5\n"
    objectness.write_ppm(directory / 'objectness.ppm', cell_pixels=3)
    assert read_ppm(directory / 'objectness.ppm').shape == (3, 6, 6)


@pytest.mark.parametrize('values,kind,message', [
    ([[0.0]], 'mean', "got an invalid heatmap kind 'mean'"),
    ([[0.0, 1.0]], 'objectness-sum', "must form a square grid"),
])
def test_invalid_heatmaps(values, kind, message):
    from dynapatch.evaluation.heatmaps import HeatMap
    from dynapatch.utils.exceptions import EvaluationError
    with pytest.raises(EvaluationError) as exception:
        HeatMap(values, kind, 2)
    assert message in str(exception.value)


def test_crafted_patches_suppress_objectness(toy_frames,
                                             brightness_detector):
    from dynapatch.attack.config import AttackConfig
    from dynapatch.attack.crafting import craft_patches
    from dynapatch.evaluation.heatmaps import objectness_heatmap
    from dynapatch.placement.compositing import place_all
    detector = brightness_detector()
    frames = toy_frames()
    config = AttackConfig(loss_kind='obj', epochs=30, batch_size=4,
                          patch_height=2, patch_width=4, learning_rate=0.05,
                          seed=3)
    patches = craft_patches(frames, 1, config, detector).patches
    clean = sum(objectness_heatmap(detector, f.image).total for f in frames)
    patched = sum(objectness_heatmap(detector, place_all(f, patches)).total
                  for f in frames)
    assert clean > 3.5
    assert patched <= 0.7 * clean
