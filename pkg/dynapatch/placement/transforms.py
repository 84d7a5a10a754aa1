# -*- coding: utf-8 -*-


"""
Random appearance transformation applied to patches while crafting.
"""


import collections

import numpy as np

from dynapatch.tensor import functional as F
from dynapatch.utils.defaults import TransformDefaults
from dynapatch.utils.exceptions import PlacementError


TransformParams = collections.namedtuple('TransformParams', [
    'brightness', 'contrast', 'noise'])
TransformParams.__doc__ = """
Appearance change of a patch: additive brightness, multiplicative contrast
and a per-pixel additive noise field
"""


class TransformRanges(object):
    """
    Sampling ranges of the random transformation

    :param brightness: (low, high) additive brightness range
    :param contrast: (low, high) contrast factor range
    :param noise: (low, high) per-pixel uniform noise range
    """

    def __init__(self, brightness=None, contrast=None, noise=None):
        self.brightness = tuple(brightness or
                                TransformDefaults.BRIGHTNESS_RANGE)
        self.contrast = tuple(contrast or TransformDefaults.CONTRAST_RANGE)
        self.noise = tuple(noise or TransformDefaults.NOISE_RANGE)
        for name in ('brightness', 'contrast', 'noise'):
            low, high = getattr(self, name)
            if low > high:
                raise PlacementError("invalid {} range [{}, {}]".format(
                    name, low, high))

    def as_dict(self):
        return {'brightness': list(self.brightness),
                'contrast': list(self.contrast),
                'noise': list(self.noise)}


def sample_transform(rng, shape, ranges=None):
    """
    Draw transformation parameters for a patch of the given shape.

    :param rng: random generator
    :type rng: `numpy.random.Generator`
    :rtype: :class:`TransformParams`
    """
    ranges = ranges or TransformRanges()
    return TransformParams(
        brightness=float(rng.uniform(*ranges.brightness)),
        contrast=float(rng.uniform(*ranges.contrast)),
        noise=rng.uniform(ranges.noise[0], ranges.noise[1], size=shape))


def apply_random_transform(pixels, params):
    """
    clamp(contrast * pixels + brightness + noise, 0, 1)

    :param pixels: patch pixels (3, h, w)
    :type pixels: :class:`~dynapatch.tensor.Tensor`
    :param params: transformation parameters
    :type params: :class:`TransformParams`
    :rtype: :class:`~dynapatch.tensor.Tensor`
    """
    pixels = getattr(pixels, 'pixels', pixels)
    noise = np.asarray(params.noise, dtype=np.float64)
    if noise.shape != pixels.shape:
        raise PlacementError("noise field of shape {} does not match the "
                             "patch shape {}".format(noise.shape,
                                                     pixels.shape))
    out = pixels * params.contrast + params.brightness + noise
    return F.clamp(out, 0.0, 1.0)
