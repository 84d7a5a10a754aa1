# -*- coding: utf-8 -*-


"""
Reading and writing of 8-bit binary PPM (P6) images.

Images are handled as float64 arrays of shape (3, H, W) with values in
[0, 1]. Quantization to 8 bit rounds half up, i.e. floor(v * 255 + 0.5).
"""


import pathlib

import numpy as np
from PIL import Image

from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import PatchFileError


def quantize(image):
    """
    Convert a (3, H, W) [0, 1] image to a (H, W, 3) uint8 array.
    """
    image = np.clip(np.asarray(image, dtype=np.float64), 0.0, 1.0)
    quantized = np.floor(image * 255.0 + 0.5).astype(np.uint8)
    return np.ascontiguousarray(quantized.transpose(1, 2, 0))


def write_ppm(path, image):
    """
    Write an image as binary PPM.

    :param path: output file path
    :type path: `str` or `pathlib.Path`
    :param image: image of shape (3, H, W) with values in [0, 1]
    :type image: `numpy.ndarray`
    """
    image = np.asarray(image)
    if image.ndim != 3 or image.shape[0] != 3:
        raise PatchFileError("expected an image of shape (3, H, W) but got "
                             "{}".format(image.shape))
    Image.fromarray(quantize(image)).save(str(path), format='PPM')


def read_ppm_bytes(path):
    """
    Read a PPM file as (H, W, 3) uint8 array.
    """
    path = pathlib.Path(path)
    with Image.open(str(path)) as ppm:
        if ppm.format != 'PPM':
            raise PatchFileError("file '{}' is not a PPM image (format: {})"
                                 .format(path, ppm.format))
        return np.array(ppm.convert('RGB'), dtype=np.uint8)


def read_ppm(path):
    """
    Read a PPM file as (3, H, W) float64 image with values in [0, 1].
    """
    pixels = read_ppm_bytes(path)
    return pixels.transpose(2, 0, 1).astype(np.float64) / 255.0


def corner_pixel(point, height, width):
    """
    Pixel (row, col) containing an image-space point, clipped to the image.
    """
    col = min(max(int(np.floor(point[0])), 0), width - 1)
    row = min(max(int(np.floor(point[1])), 0), height - 1)
    return row, col


def mark_corners(image, quads):
    """
    Paint the four corners of every screen quad in the sentinel color.

    :param image: image of shape (3, H, W) with values in [0, 1]
    :type image: `numpy.ndarray`
    :param quads: screen corner quads, each of shape (4, 2)
    :type quads: `list`
    :returns: marked copy of the image
    :rtype: `numpy.ndarray`
    """
    marked = np.array(image, dtype=np.float64, copy=True)
    height, width = marked.shape[1:]
    color = np.array(FileDefaults.SENTINEL_COLOR, dtype=np.float64) / 255.0
    for quad in quads:
        for point in np.asarray(quad, dtype=np.float64):
            row, col = corner_pixel(point, height, width)
            marked[:, row, col] = color
    return marked
