# -*- coding: utf-8 -*-


"""
Annotated frames: an image with its view angle, screen corner quads and
ground-truth object boxes.
"""


import collections

import numpy as np

from dynapatch.utils.exceptions import DatasetError


Truth = collections.namedtuple('Truth', ['class_id', 'box'])
Truth.__doc__ = """
Ground-truth object: class id and normalized (cx, cy, w, h) box
"""


class Frame(object):
    """
    Annotated frame

    :param image: pixel values of shape (3, H, W) in [0, 1]
    :type image: `numpy.ndarray`
    :param angle: view angle in degrees
    :type angle: `float`
    :param screens: visible screen quads as mapping slot id -> (4, 2) array
        of image-space corners ordered top-left, top-right, bottom-right,
        bottom-left
    :type screens: `dict`
    :param truths: ground-truth objects
    :type truths: `list` of :class:`Truth`
    :param name: optional frame name used for file storage
    :type name: `str`
    """

    def __init__(self, image, angle, screens=None, truths=None, name=None):
        image = np.array(image, dtype=np.float64)
        if image.ndim != 3 or image.shape[0] != 3:
            raise DatasetError("frame image must have shape (3, H, W) but "
                               "got {}".format(image.shape))
        if image.min(initial=0.0) < 0.0 or image.max(initial=0.0) > 1.0:
            raise DatasetError("frame pixel values must be in [0, 1]")
        self.image = image
        self.angle = float(angle)
        self.screens = {}
        for slot, quad in (screens or {}).items():
            quad = np.array(quad, dtype=np.float64)
            if quad.shape != (4, 2):
                raise DatasetError("screen quad for slot {} must have shape "
                                   "(4, 2) but got {}".format(slot,
                                                              quad.shape))
            self.screens[int(slot)] = quad
        self.truths = [Truth(int(c), tuple(float(v) for v in box))
                       for (c, box) in (truths or [])]
        self.name = name

    def __repr__(self):
        return "Frame(angle={:.3f}, screens={}, truths={})".format(
            self.angle, sorted(self.screens), [t.class_id
                                               for t in self.truths])

    @property
    def height(self):
        return self.image.shape[1]

    @property
    def width(self):
        return self.image.shape[2]

    @property
    def visible_slots(self):
        return sorted(self.screens)

    @property
    def class_id(self):
        """
        Class of the frame's (single) object.
        """
        if not self.truths:
            raise DatasetError("frame at angle {} has no ground-truth object"
                               .format(self.angle))
        return self.truths[0].class_id


def sort_by_angle(frames):
    """
    Stable sort of frames by increasing view angle.
    """
    return sorted(frames, key=lambda frame: frame.angle)
