# -*- coding: utf-8 -*-


"""
Parsers for stored dataset splits: the split index, the per-frame
sidecars and sentinel-marked screen corners.
"""


import pathlib

import numpy as np

from dynapatch.data.frame import Frame
from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import FrameParserError, DatasetError
from dynapatch.utils.images import read_ppm_bytes


class SidecarParser(object):
    """
    Parse the text sidecar of a single frame.

    :param text: sidecar contents
    :type text: `str`
    :param source: name of the parsed file used in error messages
    :type source: `str`
    """

    def __init__(self, text, source='<sidecar>'):
        self.source = source
        self.angle = None
        self.screens = {}
        self.marked_slots = []
        self.truths = []
        for number, line in enumerate(text.splitlines(), start=1):
            if line.strip():
                self.parse_line(line.split(), number)
        if self.angle is None:
            raise FrameParserError("sidecar '{}' lacks the angle record"
                                   .format(self.source))

    def error(self, number, message):
        return FrameParserError("{} (line {}): {}".format(self.source, number,
                                                         message))

    def parse_line(self, fields, number):
        record = fields[0]
        try:
            if record == 'angle' and len(fields) == 2:
                self.angle = float(fields[1])
            elif record == 'screen' and len(fields) == 2:
                self.marked_slots.append(int(fields[1]))
            elif record == 'screen' and len(fields) == 10:
                coordinates = [float(v) for v in fields[2:]]
                self.screens[int(fields[1])] = np.array(coordinates).reshape(
                    4, 2)
            elif record == 'truth' and len(fields) == 6:
                self.truths.append((int(fields[1]),
                                    tuple(float(v) for v in fields[2:])))
            else:
                raise self.error(number, "unexpected record '{}'".format(
                    " ".join(fields)))
        except ValueError:
            raise self.error(number, "unable to parse numbers in '{}'".format(
                " ".join(fields)))


def order_corners(points):
    """
    Order four corner points as top-left, top-right, bottom-right,
    bottom-left.

    The two points with the smallest y form the top edge.
    """
    points = np.asarray(points, dtype=np.float64)
    by_height = points[np.lexsort((points[:, 0], points[:, 1]))]
    top = by_height[:2][np.argsort(by_height[:2, 0], kind='stable')]
    bottom = by_height[2:][np.argsort(by_height[2:, 0], kind='stable')]
    return np.array([top[0], top[1], bottom[1], bottom[0]])


def decode_sentinel_quads(pixels, color=None):
    """
    Decode screen quads from sentinel-colored corner pixels.

    Every group of four sentinel pixels (grouped in order of increasing
    column) forms one screen; the corner is placed in the pixel center.

    :param pixels: 8-bit image of shape (H, W, 3)
    :type pixels: `numpy.ndarray`
    :returns: quads ordered from left to right in the image
    :rtype: `list` of `numpy.ndarray`
    :raises FrameParserError: if the number of sentinel pixels is not a
        multiple of four
    """
    color = FileDefaults.SENTINEL_COLOR if color is None else color
    matches = np.all(pixels == np.array(color, dtype=np.uint8), axis=-1)
    rows, cols = np.nonzero(matches)
    if rows.size % 4 != 0:
        raise FrameParserError("found {} sentinel pixels which cannot be "
                               "grouped into screen corners".format(rows.size))
    points = np.stack([cols + 0.5, rows + 0.5], axis=-1).astype(np.float64)
    points = points[np.lexsort((points[:, 1], points[:, 0]))]
    return [order_corners(points[i:i + 4])
            for i in range(0, len(points), 4)]


def read_frame(image_path, sidecar_path, name=None):
    """
    Read a stored frame.

    Sub-pixel screen coordinates of the sidecar take precedence; screens
    listed without coordinates are decoded from sentinel pixels and
    assigned in the listed order.

    :rtype: :class:`~dynapatch.data.frame.Frame`
    """
    image_path, sidecar_path = pathlib.Path(image_path), \
        pathlib.Path(sidecar_path)
    for path in (image_path, sidecar_path):
        if not path.is_file():
            raise DatasetError("missing frame file '{}'".format(path))
    sidecar = SidecarParser(sidecar_path.read_text(), str(sidecar_path))
    pixels = read_ppm_bytes(image_path)
    screens = dict(sidecar.screens)
    if sidecar.marked_slots:
        quads = decode_sentinel_quads(pixels)
        if len(quads) != len(sidecar.marked_slots):
            raise FrameParserError("'{}' lists {} marked screens but {} were "
                                   "decoded from '{}'".format(
                                       sidecar_path,
                                       len(sidecar.marked_slots),
                                       len(quads), image_path))
        for slot, quad in zip(sidecar.marked_slots, quads):
            screens.setdefault(slot, quad)
    image = pixels.transpose(2, 0, 1).astype(np.float64) / 255.0
    return Frame(image, sidecar.angle, screens=screens,
                 truths=sidecar.truths, name=name or image_path.stem)


def read_index(split_dir):
    """
    Read the frame names of a split in index order.
    """
    index_path = pathlib.Path(split_dir) / FileDefaults.FNAMES['index']
    if not index_path.is_file():
        raise DatasetError("missing index file '{}'".format(index_path))
    names = []
    for number, line in enumerate(index_path.read_text().splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise FrameParserError("{} (line {}): expected '<name> <angle>'"
                                   .format(index_path, number))
        names.append(fields[0])
    return names


def read_split(directory, split):
    """
    Read all frames of a stored split in index (angle) order.

    :param directory: dataset directory
    :param split: one of train, test or detector
    :rtype: `list` of :class:`~dynapatch.data.frame.Frame`
    """
    split_dir = pathlib.Path(directory) / split
    if not split_dir.is_dir():
        raise DatasetError("dataset '{}' has no '{}' split".format(directory,
                                                                   split))
    return [read_frame(split_dir / "{}.ppm".format(name),
                       split_dir / "{}.txt".format(name), name=name)
            for name in read_index(split_dir)]
