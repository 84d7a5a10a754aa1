# -*- coding: utf-8 -*-


"""
Flat-shaded rendering of a single annotated frame.

Faces of all object parts are drawn back to front (painter's algorithm)
after removing faces turned away from the camera. Screens of the target
are drawn on top of its body and filled with a neutral gray placeholder.
"""


import collections
import itertools

import numpy as np

from dynapatch.data.frame import Frame
from dynapatch.scenegen.camera import Camera
from dynapatch.utils.exceptions import SceneSpecError
from dynapatch.utils.geometry import (polygon_area, polygon_pixels,
                                      inside_bounds)


FrameJitter = collections.namedtuple('FrameJitter', [
    'brightness', 'background', 'color'])
FrameJitter.__doc__ = """
Per-frame appearance jitter: relative brightness change, additive
background shift (rgb) and additive object color shift (rgb)
"""

NO_JITTER = FrameJitter(0.0, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0))

# direction towards the light used for flat shading
LIGHT = np.array([-0.3, 1.0, -0.5]) / np.sqrt(0.09 + 1.0 + 0.25)

BACKGROUND_COLORS = {
    'flat': ((0.55, 0.58, 0.60), (0.55, 0.58, 0.60)),
    'gradient': ((0.60, 0.72, 0.88), (0.33, 0.33, 0.30)),
}


def box_faces(box):
    """
    The six faces of a box as (corners (4, 3), outward normal) pairs.
    """
    center = np.array(box.center, dtype=np.float64)
    half = 0.5 * np.array(box.size, dtype=np.float64)
    faces = []
    for axis, sign in itertools.product(range(3), (-1.0, 1.0)):
        normal = np.zeros(3)
        normal[axis] = sign
        u_axis, v_axis = [a for a in range(3) if a != axis]
        corners = []
        for (su, sv) in ((-1, -1), (1, -1), (1, 1), (-1, 1)):
            corner = center.copy()
            corner[axis] += sign * half[axis]
            corner[u_axis] += su * half[u_axis]
            corner[v_axis] += sv * half[v_axis]
            corners.append(corner)
        faces.append((np.array(corners), normal))
    return faces


def background_image(spec, jitter):
    """
    Background of shape (3, H, W) according to the scene's style.
    """
    size = spec.image_size
    top, bottom = (np.array(c) for c in BACKGROUND_COLORS[spec.background])
    weights = (np.arange(size) + 0.5) / size
    column = top[:, None] * (1.0 - weights) + bottom[:, None] * weights
    column = column + np.array(jitter.background)[:, None]
    return np.repeat(column[:, :, None], size, axis=2)


def shade(color, normal):
    intensity = 0.6 + 0.4 * max(0.0, float(np.dot(normal, LIGHT)))
    return np.clip(np.array(color) * intensity, 0.0, 1.0)


def fill(image, corners, color):
    rows, cols = polygon_pixels(corners, image.shape[1], image.shape[2])
    image[:, rows, cols] = np.asarray(color, dtype=np.float64)[:, None]


def truth_box(camera, parts, size):
    """
    Normalized (cx, cy, w, h) bounding box of all projected part corners,
    clipped to the image.
    """
    corners = np.concatenate([face[0] for part in parts
                              for face in box_faces(part)])
    projected = camera.project(corners)
    x0, y0 = np.clip(projected.min(axis=0), 0.0, size)
    x1, y1 = np.clip(projected.max(axis=0), 0.0, size)
    return ((x0 + x1) / (2.0 * size), (y0 + y1) / (2.0 * size),
            (x1 - x0) / size, (y1 - y0) / size)


def render_frame(spec, angle, class_id, jitter=None, screen_fill=None,
                 name=None):
    """
    Render an annotated frame of an object seen under a view angle.

    :param spec: scene parameters
    :type spec: :class:`~dynapatch.scenegen.scene.SceneSpec`
    :param angle: view angle in degrees within the scene's angle range
    :type angle: `float`
    :param class_id: class of the shown object
    :type class_id: `int`
    :param jitter: optional appearance jitter
    :type jitter: :class:`FrameJitter`
    :param screen_fill: optional mapping slot id -> rgb color drawn instead
        of the gray placeholder
    :type screen_fill: `dict`
    :returns: the frame with exact sub-pixel screen corners of all visible
        screens (target objects only)
    :rtype: :class:`~dynapatch.data.frame.Frame`
    :raises SceneSpecError: if the angle is outside the scene's range
    :raises ProjectionError: if the object extends behind the camera
    """
    if not spec.angle_min <= angle <= spec.angle_max:
        raise SceneSpecError("view angle {} is outside the scene's range "
                             "[{}, {}]".format(angle, spec.angle_min,
                                               spec.angle_max))
    jitter = jitter or NO_JITTER
    screen_fill = screen_fill or {}
    camera = Camera.from_spec(spec, angle)
    size = spec.image_size
    image = background_image(spec, jitter)
    parts = spec.object_parts(class_id)
    base_color = np.array(spec.class_color(class_id)) + np.array(jitter.color)
    # painter's algorithm on front-facing faces
    faces = []
    for part in parts:
        color = np.clip(base_color * part.tint, 0.0, 1.0)
        for corners, normal in box_faces(part):
            face_center = corners.mean(axis=0)
            if not camera.faces_towards(face_center, normal):
                continue
            distance = float(np.linalg.norm(face_center - camera.position))
            faces.append((distance, corners, shade(color, normal)))
    for _, corners, color in sorted(faces, key=lambda f: -f[0]):
        fill(image, camera.project(corners), color)
    screens = {}
    if class_id == spec.target_class:
        for screen in spec.screen_slots:
            corners = spec.screen_corners(screen)
            if not camera.faces_towards(corners.mean(axis=0),
                                        spec.face_normal(screen.face)):
                continue
            quad = camera.project(corners)
            gray = (spec.screen_gray,) * 3
            fill(image, quad, screen_fill.get(screen.slot, gray))
            if polygon_area(quad) >= spec.min_screen_area and \
                    inside_bounds(quad, size, size):
                screens[screen.slot] = quad
    image = np.clip(image * (1.0 + jitter.brightness), 0.0, 1.0)
    truth = (class_id, truth_box(camera, parts, size))
    return Frame(image, angle, screens=screens, truths=[truth], name=name)
