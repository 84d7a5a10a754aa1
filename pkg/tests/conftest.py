# -*- coding: utf-8 -*-


"""
Collection of pytest fixtures shared by the test suite
"""

import pytest


def pytest_addoption(parser):
    parser.addoption("--run-acceptance", action="store_true", default=False,
                     help="run the end-to-end acceptance tests on the "
                          "default configuration (slow)")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: end-to-end run on the "
                            "default configuration")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-acceptance"):
        return
    skip = pytest.mark.skip(reason="needs --run-acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope='function')
def rng():
    """
    Seeded random generator.
    """
    import numpy as np
    yield np.random.default_rng(1234)


@pytest.fixture(scope='function')
def tiny_detector_config():
    """
    Detector configuration mapping 16x16 images onto a 2x2 grid with two
    boxes per cell and three classes.
    """
    from dynapatch.detector.config import DetectorConfig
    yield DetectorConfig(grid_size=2, boxes_per_cell=2, num_classes=3,
                         input_size=16,
                         conv_layers=((4, 3, 2), (4, 3, 2), (4, 3, 2)))


@pytest.fixture(scope='function')
def tiny_detector(tiny_detector_config):
    """
    Randomly initialized detector of the tiny configuration.
    """
    from dynapatch.detector.network import Detector
    yield Detector.initialize(tiny_detector_config, seed=7)


@pytest.fixture(scope='function')
def toy_frames():
    """
    Factory creating 16x16 frames with a single back screen quad at evenly
    spaced angles.
    """
    import numpy as np
    from dynapatch.data.frame import Frame

    def make_frames(count=4, angle_range=(-10.0, 10.0), seed=0,
                    screens=True, class_id=0):
        generator = np.random.default_rng(seed)
        low, high = angle_range
        spacing = (high - low) / count
        quad = np.array([[4.0, 5.0], [12.0, 5.0], [12.0, 11.0], [4.0, 11.0]])
        frames = []
        for index in range(count):
            image = generator.uniform(0.2, 0.8, size=(3, 16, 16))
            frames.append(Frame(image, low + (index + 0.5) * spacing,
                                screens={0: quad} if screens else None,
                                truths=[(class_id, (0.5, 0.5, 0.6, 0.5))],
                                name="frame_{:04d}".format(index)))
        return frames
    yield make_frames


@pytest.fixture(scope='function')
def small_scene():
    """
    Factory creating a low resolution scene (48 px images, 1 frame per 5
    degrees over [-20, 20]) keeping the default screens.
    """
    from dynapatch.scenegen.scene import SceneSpec

    def make_scene(**overrides):
        settings = dict(image_size=48, focal_length=48.0,
                        frames_per_degree=0.2, angle_min=-20.0,
                        angle_max=20.0, min_screen_area=2.0)
        settings.update(overrides)
        return SceneSpec(**settings)
    yield make_scene


@pytest.fixture(scope='function')
def brightness_detector():
    """
    Factory creating a detector double with a single 1x1x1 slot whose
    objectness rises as the mean brightness of an image region falls below
    `level`; detections always carry class 0.
    """
    import numpy as np
    from dynapatch.detector.config import DetectorConfig
    from dynapatch.tensor import as_tensor
    from dynapatch.tensor import functional as F

    class BrightnessDetector(object):
        def __init__(self, level, region):
            self.level = level
            self.region = region
            self.config = DetectorConfig()
            self.calls = 0

        def set_trainable(self, trainable):
            pass

        def forward(self, image):
            self.calls += 1
            rows, cols = self.region
            mean = as_tensor(image)[:, rows, cols].mean()
            logit = F.mul(F.sub(self.level, mean), 40.0)
            base = np.zeros((1, 1, 1, 8))
            base[..., 5] = 2.0
            onehot = np.zeros((1, 1, 1, 8))
            onehot[..., 4] = 1.0
            return F.add(base, F.mul(onehot, logit))

    def make_detector(level=0.7, region=(slice(5, 11), slice(4, 12))):
        return BrightnessDetector(level, region)
    yield make_detector
