# -*- coding: utf-8 -*-


"""
Differentiable placing of patches onto screen quads.

Every destination pixel whose center lies inside a screen quad is replaced
by the bilinearly interpolated patch value at the inverse-mapped location;
all other pixels are copied unchanged. The sampling geometry only depends
on the homography and the image / patch sizes and is cached.
"""


import functools

import numpy as np

from dynapatch.placement.homography import Homography, solve_homography
from dynapatch.placement.transforms import apply_random_transform
from dynapatch.tensor import as_tensor
from dynapatch.tensor import functional as F
from dynapatch.utils.exceptions import PlacementError
from dynapatch.utils.geometry import inside_bounds, polygon_pixels


# sample coordinates this close to an integer are snapped onto it
SNAP_TOLERANCE = 1.0E-9


class PlacementGeometry(object):
    """
    Fixed bilinear sampling of a patch into the pixels covered by a quad

    :param positions: flat indices (channel-major) of the replaced image
        values
    :param indices: flat patch indices of the four bilinear neighbours of
        every replaced value, shape (N, 4)
    :param weights: bilinear weights matching `indices`
    """

    def __init__(self, positions, indices, weights):
        self.positions = positions
        self.indices = indices
        self.weights = weights

    @property
    def pixel_count(self):
        return self.positions.size // 3


def _snap(values):
    rounded = np.round(values)
    return np.where(np.abs(values - rounded) <= SNAP_TOLERANCE, rounded,
                    values)


@functools.lru_cache(maxsize=4096)
def _cached_geometry(matrix_key, corner_key, patch_shape, image_shape):
    homography = Homography(np.reshape(matrix_key, (3, 3)),
                            corners=np.reshape(corner_key, (4, 2)))
    quad = homography.corners
    _, height, width = image_shape
    _, patch_h, patch_w = patch_shape
    rows, cols = polygon_pixels(quad, height, width)
    inverse = homography.inverse()
    centers = np.stack([cols + 0.5, rows + 0.5], axis=-1)
    unit = inverse.apply(centers) if len(centers) else np.zeros((0, 2))
    # patch pixel centers sit at (j + 0.5) / w in unit-square coordinates
    px = np.clip(_snap(unit[:, 0] * patch_w - 0.5), 0.0, patch_w - 1.0)
    py = np.clip(_snap(unit[:, 1] * patch_h - 0.5), 0.0, patch_h - 1.0)
    x0 = np.floor(px).astype(np.int64)
    y0 = np.floor(py).astype(np.int64)
    x1 = np.minimum(x0 + 1, patch_w - 1)
    y1 = np.minimum(y0 + 1, patch_h - 1)
    fx, fy = px - x0, py - y0
    corner_index = np.stack([y0 * patch_w + x0, y0 * patch_w + x1,
                             y1 * patch_w + x0, y1 * patch_w + x1], axis=-1)
    corner_weight = np.stack([(1 - fx) * (1 - fy), fx * (1 - fy),
                              (1 - fx) * fy, fx * fy], axis=-1)
    channels = np.arange(3)[:, None]
    positions = (channels * height * width + rows * width + cols).reshape(-1)
    indices = (channels[:, :, None] * patch_h * patch_w +
               corner_index[None, :, :]).reshape(-1, 4)
    weights = np.broadcast_to(corner_weight[None],
                              (3,) + corner_weight.shape).reshape(-1, 4)
    return PlacementGeometry(positions, indices, weights.copy())


def placement_geometry(homography, patch_shape, image_shape):
    """
    Sampling geometry of a patch placed through a homography onto the
    image of the unit square.

    :raises PlacementError: if the quad does not lie inside the image
    """
    quad = homography.corners
    if not inside_bounds(quad, image_shape[1], image_shape[2]):
        raise PlacementError("screen quad {} lies outside the {}x{} image"
                             .format(quad.tolist(), image_shape[2],
                                     image_shape[1]))
    return _cached_geometry(tuple(float(v) for v in homography.matrix.flat),
                            tuple(float(v) for v in quad.flat),
                            tuple(patch_shape), tuple(image_shape))


def composite_patch(image, pixels, homography):
    """
    Replace the screen region of an image by the warped patch.

    Pixels outside the quad are copied bit-exactly; gradients flow to the
    patch pixels through the fixed bilinear weights.

    :param image: frame image of shape (3, H, W)
    :type image: :class:`~dynapatch.tensor.Tensor` or `numpy.ndarray`
    :param pixels: patch pixels of shape (3, h, w)
    :type pixels: :class:`~dynapatch.tensor.Tensor`
    :param homography: mapping of the unit square onto the screen quad
    :type homography: :class:`~dynapatch.placement.homography.Homography`
    :rtype: :class:`~dynapatch.tensor.Tensor`
    :raises PlacementError: if the quad lies outside the image
    """
    image = as_tensor(image)
    pixels = as_tensor(getattr(pixels, 'pixels', pixels))
    geometry = placement_geometry(homography, pixels.shape, image.shape)
    if geometry.positions.size == 0:
        return image
    sampled = F.take_weighted(pixels, geometry.indices, geometry.weights)
    return F.scatter_replace(image, geometry.positions, sampled)


def place_all(frame, patches, transforms=None):
    """
    Composite every patch whose slot is visible in the frame.

    :param frame: the frame to patch
    :type frame: :class:`~dynapatch.data.frame.Frame`
    :param patches: patches with distinct slot ids
    :type patches: `list` of :class:`~dynapatch.data.patch.Patch`
    :param transforms: optional mapping slot id -> TransformParams applied
        to the patch before placing
    :type transforms: `dict`
    :rtype: :class:`~dynapatch.tensor.Tensor`
    :raises PlacementError: if two patches share a slot
    """
    slots = [patch.slot for patch in patches]
    if len(set(slots)) != len(slots):
        raise PlacementError("duplicate slot assignment in {}".format(slots))
    transforms = transforms or {}
    image = as_tensor(frame.image)
    for patch in sorted(patches, key=lambda p: p.slot):
        if patch.slot not in frame.screens:
            continue
        pixels = patch.pixels
        if patch.slot in transforms:
            pixels = apply_random_transform(pixels, transforms[patch.slot])
        image = composite_patch(image, pixels,
                                solve_homography(frame.screens[patch.slot]))
    return image
