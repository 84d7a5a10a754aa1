# -*- coding: utf-8 -*-


"""
Scene description: object models, screen slots and the scene parameters
shared by all frames of a dataset.

World coordinates are right-handed with the y-axis pointing up. Every
object stands on the ground plane (y = 0) centered on the origin with its
length along z. The target's back face looks towards -z and its left face
towards +x.
"""


import collections

import numpy as np

from dynapatch.utils.defaults import SceneDefaults
from dynapatch.utils.exceptions import SceneSpecError, ScreenSizeError


Box = collections.namedtuple('Box', ['center', 'size', 'tint'])
Box.__doc__ = """
Axis aligned box: center (x, y, z), size (width, height, length) and a
color multiplier applied to the class color
"""

ScreenSlot = collections.namedtuple('ScreenSlot', ['slot', 'face', 'offset',
                                                   'size'])
ScreenSlot.__doc__ = """
Rectangle on a face of the target's body: offset (right, down) of its
top-left corner from the face's top-left corner and size (width, height),
both in object units as seen from outside the face
"""


# outward normal and in-face right direction (as seen from outside) of the
# vertical faces
FACE_AXES = {
    'back': ((0.0, 0.0, -1.0), (-1.0, 0.0, 0.0)),
    'front': ((0.0, 0.0, 1.0), (1.0, 0.0, 0.0)),
    'left': ((1.0, 0.0, 0.0), (0.0, 0.0, -1.0)),
    'right': ((-1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
}


# body and cabin of the target variants as (width, height, length,
# z-offset of the cabin) plus the body color
VARIANTS = {
    'sedan': {
        'body': (1.8, 0.8, 4.4), 'cabin': (1.6, 0.6, 2.4), 'cabin_z': -0.2,
        'color': None,
    },
    'hatchback': {
        'body': (1.8, 0.85, 3.8), 'cabin': (1.6, 0.65, 2.2), 'cabin_z': -0.5,
        'color': (0.70, 0.18, 0.16),
    },
    'compact': {
        'body': (1.5, 0.8, 3.4), 'cabin': (1.4, 0.6, 1.8), 'cabin_z': -0.3,
        'color': (0.15, 0.45, 0.80),
    },
}

# height of the body's bottom above the ground
BODY_CLEARANCE = 0.25


# parts of all non-target classes
CLASS_MODELS = {
    1: [Box((0.0, 1.45, 0.0), (2.2, 2.3, 5.0), 1.0)],
    2: [Box((0.0, 1.35, -0.6), (2.0, 2.0, 3.2), 1.0),
        Box((0.0, 1.0, 1.6), (2.0, 1.3, 1.2), 0.8)],
    3: [Box((0.0, 0.45, 0.0), (0.45, 0.9, 0.3), 0.6),
        Box((0.0, 1.25, 0.0), (0.55, 0.7, 0.35), 1.0),
        Box((0.0, 1.75, 0.0), (0.3, 0.3, 0.3), 1.1)],
    4: [Box((0.0, 0.5, 0.0), (1.6, 0.6, 3.8), 1.0),
        Box((0.0, 1.05, -0.4), (1.0, 0.5, 1.2), 0.7)],
    5: [Box((0.0, 0.3, 0.0), (1.2, 0.6, 1.2), 1.0),
        Box((0.0, 0.75, 0.0), (0.8, 0.3, 0.8), 1.3)],
    6: [Box((0.0, 0.9, 0.0), (0.15, 1.8, 0.15), 1.5),
        Box((0.0, 2.2, 0.0), (0.5, 1.0, 0.4), 1.0)],
    7: [Box((0.0, 0.8, 0.0), (0.1, 1.6, 0.1), 0.6),
        Box((0.0, 1.9, 0.0), (1.3, 1.0, 0.08), 1.0)],
}


class SceneSpec(object):
    """
    Parameters of the synthetic scenes

    All parameters default to the values defined in
    :class:`~dynapatch.utils.defaults.SceneDefaults`. The camera keeps a
    fixed distance to the target point for every frame and orbits it at a
    fixed elevation; the view angle is the azimuth with 0 degrees being the
    dead-on view of the target's back and positive angles moving towards
    its left side.

    :param screen_slots: screens attached to the target's body
    :type screen_slots: `list` of :class:`ScreenSlot`
    :param variant: target body preset (sedan, hatchback or compact)
    :type variant: `str`
    :raises SceneSpecError: for inconsistent parameters or screens not
        fitting onto their face
    """

    FIELDS = ('image_size', 'focal_length', 'camera_distance',
              'camera_elevation', 'camera_target', 'angle_min', 'angle_max',
              'frames_per_degree', 'angle_jitter', 'brightness_jitter',
              'color_jitter', 'background', 'screen_gray', 'min_screen_area',
              'target_class', 'variant')

    def __init__(self, screen_slots=None, palette=None, **kwargs):
        for name in kwargs:
            if name not in self.FIELDS:
                valid = ", ".join(self.FIELDS)
                raise SceneSpecError("got an invalid scene setting '{}' "
                                     "(valid settings: {})".format(name,
                                                                   valid))
        for name in self.FIELDS:
            default = getattr(SceneDefaults, name.upper())
            value = kwargs.get(name)
            setattr(self, name, default if value is None else value)
        self.image_size = int(self.image_size)
        self.camera_target = tuple(float(v) for v in self.camera_target)
        self.palette = tuple(tuple(float(c) for c in color) for color in
                             (palette or SceneDefaults.PALETTE))
        if screen_slots is None:
            screen_slots = [ScreenSlot(s['slot'], s['face'],
                                       tuple(s['offset']), tuple(s['size']))
                            for s in SceneDefaults.SCREEN_SLOTS]
        self.screen_slots = [ScreenSlot(int(s.slot), s.face,
                                        tuple(float(v) for v in s.offset),
                                        tuple(float(v) for v in s.size))
                             for s in screen_slots]
        self.validate()

    def validate(self):
        if self.variant not in VARIANTS:
            raise SceneSpecError("unknown target variant '{}' (valid "
                                 "variants: {})".format(
                                     self.variant, ", ".join(VARIANTS)))
        if self.background not in SceneDefaults.BACKGROUND_STYLES:
            raise SceneSpecError("unknown background style '{}' (valid "
                                 "styles: {})".format(
                                     self.background, ", ".join(
                                         SceneDefaults.BACKGROUND_STYLES)))
        if self.angle_min > self.angle_max:
            raise SceneSpecError("angle range [{}, {}] is reversed".format(
                self.angle_min, self.angle_max))
        if self.frames_per_degree <= 0.0:
            raise SceneSpecError("frames per degree must be positive (got "
                                 "{})".format(self.frames_per_degree))
        # jittered angles have to stay within their sector
        if not 0.0 <= self.angle_jitter < 0.5:
            raise SceneSpecError("angle jitter must be in [0, 0.5) (got {})"
                                 .format(self.angle_jitter))
        if self.image_size < 1 or self.focal_length <= 0.0:
            raise SceneSpecError("invalid camera intrinsics (image size {}, "
                                 "focal length {})".format(
                                     self.image_size, self.focal_length))
        if self.camera_distance <= 0.0:
            raise SceneSpecError("camera distance must be positive")
        if not 0 <= self.target_class < len(self.palette):
            raise SceneSpecError("target class {} has no palette entry"
                                 .format(self.target_class))
        slots = [s.slot for s in self.screen_slots]
        if len(set(slots)) != len(slots):
            raise SceneSpecError("duplicate screen slot ids {}".format(slots))
        for screen in self.screen_slots:
            self.check_screen(screen)

    def check_screen(self, screen):
        """
        Check that a screen rectangle lies fully within its body face.
        """
        if screen.face not in FACE_AXES:
            raise SceneSpecError("unknown face '{}' for screen {} (valid "
                                 "faces: {})".format(
                                     screen.face, screen.slot,
                                     ", ".join(SceneDefaults.SCREEN_FACES)))
        face_width, face_height = self.face_size(screen.face)
        (x, y), (w, h) = screen.offset, screen.size
        if w <= 0.0 or h <= 0.0 or x < 0.0 or y < 0.0 or \
                x + w > face_width + 1.0E-12 or y + h > face_height + 1.0E-12:
            raise SceneSpecError("screen {} (offset {}, size {}) does not fit "
                                 "onto the {} face of size {}x{}".format(
                                     screen.slot, screen.offset, screen.size,
                                     screen.face, face_width, face_height))

    def copy(self, screen_slots=None, **overrides):
        """
        Copy of the scene with some settings replaced.
        """
        settings = {name: getattr(self, name) for name in self.FIELDS}
        settings.update(overrides)
        if screen_slots is None:
            screen_slots = self.screen_slots
        return SceneSpec(screen_slots=list(screen_slots),
                         palette=self.palette, **settings)

    def as_dict(self):
        settings = {name: getattr(self, name) for name in self.FIELDS}
        settings['camera_target'] = list(self.camera_target)
        settings['screen_slots'] = [
            {'slot': s.slot, 'face': s.face, 'offset': list(s.offset),
             'size': list(s.size)} for s in self.screen_slots]
        return settings

    def variant_spec(self, name):
        """
        Copy of the scene showing another target variant with the same
        screens.

        :raises SceneSpecError: if the screens do not fit onto the variant
        """
        return self.copy(variant=name)

    # -- target geometry --------------------------------------------------

    @property
    def body(self):
        width, height, length = VARIANTS[self.variant]['body']
        center = (0.0, BODY_CLEARANCE + 0.5 * height, 0.0)
        return Box(center, (width, height, length), 1.0)

    @property
    def cabin(self):
        preset = VARIANTS[self.variant]
        width, height, length = preset['cabin']
        body = self.body
        bottom = body.center[1] + 0.5 * body.size[1]
        return Box((0.0, bottom + 0.5 * height, preset['cabin_z']),
                   (width, height, length), 0.55)

    def face_size(self, face):
        """
        (width, height) of a vertical face of the target's body.
        """
        width, height, length = self.body.size
        if face in ('back', 'front'):
            return width, height
        return length, height

    def class_color(self, class_id):
        if class_id == self.target_class:
            color = VARIANTS[self.variant]['color']
            if color is not None:
                return tuple(color)
        return self.palette[class_id]

    def object_parts(self, class_id):
        """
        Boxes making up an object of the given class.
        """
        if class_id == self.target_class:
            return [self.body, self.cabin]
        if not 0 <= class_id < len(self.palette):
            raise SceneSpecError("unknown class id {} (valid ids: 0-{})"
                                 .format(class_id, len(self.palette) - 1))
        # classes without a model of their own fall back to a plain box
        return CLASS_MODELS.get(class_id,
                                [Box((0.0, 0.75, 0.0), (1.2, 1.5, 1.2), 1.0)])

    def screen_corners(self, screen):
        """
        World coordinates of a screen's corners ordered top-left,
        top-right, bottom-right, bottom-left as seen from outside.

        :rtype: `numpy.ndarray` of shape (4, 3)
        """
        normal, right = (np.array(v) for v in FACE_AXES[screen.face])
        up = np.array((0.0, 1.0, 0.0))
        body = self.body
        center = np.array(body.center)
        half = 0.5 * np.array(body.size)
        face_width, face_height = self.face_size(screen.face)
        # the face center sits half the box extent along the normal
        face_center = center + normal * np.abs(normal).dot(half)
        top_left = face_center - 0.5 * face_width * right + \
            0.5 * face_height * up
        (x, y), (w, h) = screen.offset, screen.size
        origin = top_left + x * right - y * up
        return np.array([origin,
                         origin + w * right,
                         origin + w * right - h * up,
                         origin - h * up])

    def face_normal(self, face):
        return np.array(FACE_AXES[face][0])

    def frame_count(self, angle_min=None, angle_max=None):
        """
        Number of frames rendered for the angle range.
        """
        low = self.angle_min if angle_min is None else angle_min
        high = self.angle_max if angle_max is None else angle_max
        return int(round((high - low) * self.frames_per_degree))

    # -- screen size study ------------------------------------------------

    def with_back_screen_ratio(self, ratio, slot=0):
        """
        Copy of the scene showing only a back screen covering the given
        fraction of the back face's area.

        The resized screen keeps the aspect ratio and the center of the
        current back screen `slot`. A ratio of 0 removes all screens.

        :raises ScreenSizeError: if the ratio exceeds 1 or the resized
            screen does not fit onto the back face
        """
        if ratio < 0.0 or ratio > 1.0:
            raise ScreenSizeError("screen area ratio must be in [0, 1] (got "
                                  "{})".format(ratio))
        if ratio == 0.0:
            return self.copy(screen_slots=[])
        reference = [s for s in self.screen_slots
                     if s.slot == slot and s.face == 'back']
        if not reference:
            raise ScreenSizeError("no back screen with slot id {} to resize"
                                  .format(slot))
        reference = reference[0]
        face_width, face_height = self.face_size('back')
        aspect = reference.size[0] / reference.size[1]
        area = ratio * face_width * face_height
        height = np.sqrt(area / aspect)
        width = aspect * height
        center_x = reference.offset[0] + 0.5 * reference.size[0]
        center_y = reference.offset[1] + 0.5 * reference.size[1]
        screen = ScreenSlot(slot, 'back', (center_x - 0.5 * width,
                                           center_y - 0.5 * height),
                            (width, height))
        try:
            return self.copy(screen_slots=[screen])
        except SceneSpecError as exception:
            raise ScreenSizeError("screen area ratio {} is not achievable on "
                                  "the back face: {}".format(ratio,
                                                             exception))
