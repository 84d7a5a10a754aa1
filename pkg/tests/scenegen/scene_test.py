# -*- coding: utf-8 -*-


"""
Test suite for the SceneSpec class
"""


import pytest
import numpy as np


def test_default_scene():
    from dynapatch.scenegen.scene import SceneSpec
    spec = SceneSpec()
    assert spec.image_size == 144
    assert spec.variant == 'sedan'
    assert [s.face for s in spec.screen_slots] == ['back', 'left']
    assert spec.frame_count() == 180
    assert spec.frame_count(-10.0, 10.0) == 40


@pytest.mark.parametrize('settings,message', [
    ({'shininess': 1.0}, "invalid scene setting 'shininess'"),
    ({'variant': 'van'}, "unknown target variant 'van'"),
    ({'background': 'noise'}, "unknown background style 'noise'"),
    ({'angle_min': 10.0, 'angle_max': -10.0}, "is reversed"),
    ({'frames_per_degree': -1.0}, "frames per degree must be positive"),
    ({'angle_jitter': 0.5}, "angle jitter must be in [0, 0.5)"),
    ({'focal_length': -1.0}, "invalid camera intrinsics"),
    ({'target_class': 8}, "has no palette entry"),
])
def test_invalid_settings(settings, message):
    from dynapatch.scenegen.scene import SceneSpec
    from dynapatch.utils.exceptions import SceneSpecError
    with pytest.raises(SceneSpecError) as exception:
        SceneSpec(**settings)
    assert message in str(exception.value)


@pytest.mark.parametrize('screens,message', [
    ([(0, 'back', (1.0, 0.1), (1.0, 0.4))], "does not fit onto the back"),
    ([(0, 'top', (0.0, 0.0), (1.0, 0.4))], "unknown face 'top'"),
    ([(0, 'back', (0.1, 0.1), (0.5, 0.4)),
      (0, 'left', (0.1, 0.1), (0.5, 0.4))], "duplicate screen slot ids"),
])
def test_invalid_screens(screens, message):
    from dynapatch.scenegen.scene import SceneSpec, ScreenSlot
    from dynapatch.utils.exceptions import SceneSpecError
    with pytest.raises(SceneSpecError) as exception:
        SceneSpec(screen_slots=[ScreenSlot(*s) for s in screens])
    assert message in str(exception.value)


def test_face_sizes():
    from dynapatch.scenegen.scene import SceneSpec
    spec = SceneSpec()
    assert spec.face_size('back') == (1.8, 0.8)
    assert spec.face_size('left') == (4.4, 0.8)
    assert SceneSpec(variant='compact').face_size('front') == (1.5, 0.8)


def test_back_screen_corners():
    from dynapatch.scenegen.scene import SceneSpec
    spec = SceneSpec()
    corners = spec.screen_corners(spec.screen_slots[0])
    # top-left, top-right, bottom-right, bottom-left seen from behind
    expected = [[0.5, 0.9, -2.2], [-0.5, 0.9, -2.2], [-0.5, 0.45, -2.2],
                [0.5, 0.45, -2.2]]
    assert np.allclose(corners, expected)


def test_left_screen_corners_lie_on_left_face():
    from dynapatch.scenegen.scene import SceneSpec
    spec = SceneSpec()
    corners = spec.screen_corners(spec.screen_slots[1])
    assert np.allclose(corners[:, 0], 0.9)
    assert np.allclose(corners[0], [0.9, 0.925, 0.8])
    assert np.allclose(corners[2], [0.9, 0.425, -0.8])


def test_object_parts():
    from dynapatch.scenegen.scene import SceneSpec
    from dynapatch.utils.exceptions import SceneSpecError
    spec = SceneSpec()
    body, cabin = spec.object_parts(0)
    assert body.size == (1.8, 0.8, 4.4)
    # the cabin sits on top of the body
    assert cabin.center[1] - 0.5 * cabin.size[1] == pytest.approx(1.05)
    assert len(spec.object_parts(1)) == 1
    with pytest.raises(SceneSpecError) as exception:
        spec.object_parts(12)
    assert "unknown class id 12" in str(exception.value)


def test_class_colors_follow_variant():
    from dynapatch.scenegen.scene import SceneSpec
    from dynapatch.utils.defaults import SceneDefaults
    assert SceneSpec().class_color(0) == SceneDefaults.PALETTE[0]
    assert SceneSpec(variant='compact').class_color(0) == (0.15, 0.45, 0.80)
    assert SceneSpec(variant='compact').class_color(1) == \
        SceneDefaults.PALETTE[1]


def test_copy_and_variant_spec(small_scene):
    from dynapatch.utils.exceptions import SceneSpecError
    spec = small_scene()
    copied = spec.copy(angle_min=-10.0)
    assert copied.angle_min == -10.0
    assert copied.image_size == spec.image_size
    assert copied.screen_slots == spec.screen_slots
    hatchback = spec.variant_spec('hatchback')
    assert hatchback.variant == 'hatchback'
    assert hatchback.screen_slots == spec.screen_slots
    with pytest.raises(SceneSpecError):
        spec.variant_spec('van')


def test_as_dict_is_serializable(small_scene):
    import json
    settings = small_scene().as_dict()
    assert json.loads(json.dumps(settings))['screen_slots'][0]['face'] == \
        'back'


@pytest.mark.parametrize('ratio', [0.05, 0.1, 0.25])
def test_back_screen_ratio(ratio):
    from dynapatch.scenegen.scene import SceneSpec
    spec = SceneSpec().with_back_screen_ratio(ratio)
    assert len(spec.screen_slots) == 1
    screen = spec.screen_slots[0]
    assert screen.face == 'back'
    assert screen.size[0] * screen.size[1] == pytest.approx(ratio * 1.8 *
                                                             0.8)
    # aspect ratio and center are kept
    assert screen.size[0] / screen.size[1] == pytest.approx(1.0 / 0.45)
    assert screen.offset[0] + 0.5 * screen.size[0] == pytest.approx(0.9)
    assert screen.offset[1] + 0.5 * screen.size[1] == pytest.approx(0.375)


def test_back_screen_ratio_errors():
    from dynapatch.scenegen.scene import SceneSpec, ScreenSlot
    from dynapatch.utils.exceptions import ScreenSizeError
    spec = SceneSpec()
    assert spec.with_back_screen_ratio(0.0).screen_slots == []
    with pytest.raises(ScreenSizeError) as exception:
        spec.with_back_screen_ratio(1.5)
    assert "must be in [0, 1]" in str(exception.value)
    with pytest.raises(ScreenSizeError) as exception:
        spec.with_back_screen_ratio(0.9)
    assert "is not achievable" in str(exception.value)
    left_only = SceneSpec(screen_slots=[ScreenSlot(1, 'left', (1.4, 0.1),
                                                   (1.6, 0.5))])
    with pytest.raises(ScreenSizeError) as exception:
        left_only.with_back_screen_ratio(0.1)
    assert "no back screen" in str(exception.value)
