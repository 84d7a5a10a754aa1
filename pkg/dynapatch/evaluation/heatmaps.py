# -*- coding: utf-8 -*-


"""
Per-cell views of the raw detector output: the objectness sum over the
boxes of every cell and the most probable class of every cell.
"""


import csv

import numpy as np

from dynapatch.detector.postprocess import slot_scores
from dynapatch.utils.defaults import SceneDefaults
from dynapatch.utils.exceptions import EvaluationError
from dynapatch.utils.images import write_ppm


class HeatMap(object):
    """
    S x S grid of per-cell values

    :param values: cell values of shape (S, S)
    :type values: `numpy.ndarray`
    :param kind: either `objectness-sum` or `class-argmax`
    :type kind: `str`
    :param scale: upper bound of the value range (the number of boxes per
        cell for objectness maps, the number of classes for class maps)
    :type scale: `int`
    """

    KINDS = ('objectness-sum', 'class-argmax')

    def __init__(self, values, kind, scale):
        if kind not in self.KINDS:
            raise EvaluationError("got an invalid heatmap kind '{}' (valid "
                                  "kinds: {})".format(kind,
                                                      ", ".join(self.KINDS)))
        values = np.asarray(values)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise EvaluationError("heatmap values must form a square grid "
                                  "but got shape {}".format(values.shape))
        self.values = values
        self.kind = kind
        self.scale = scale

    @property
    def grid_size(self):
        return self.values.shape[0]

    @property
    def total(self):
        return float(np.sum(self.values))

    def as_image(self, cell_pixels=16):
        """
        Render the map as (3, S * cell, S * cell) image: a linear gray
        scale [0, scale] -> [0, 1] for objectness maps, the class palette
        for class maps.
        """
        if self.kind == 'objectness-sum':
            gray = np.clip(self.values / float(self.scale), 0.0, 1.0)
            cells = np.repeat(gray[None], 3, axis=0)
        else:
            palette = np.array(SceneDefaults.PALETTE, dtype=np.float64)
            ids = self.values.astype(np.int64) % len(palette)
            cells = palette[ids].transpose(2, 0, 1)
        block = np.ones((cell_pixels, cell_pixels))
        return np.stack([np.kron(channel, block) for channel in cells])

    def write_csv(self, path):
        with open(path, 'w', newline='') as grid_file:
            writer = csv.writer(grid_file, lineterminator='\n')
            for row in self.values:
                if self.kind == 'class-argmax':
                    writer.writerow([int(v) for v in row])
                else:
                    writer.writerow([repr(float(v)) for v in row])
        return path

    def write_ppm(self, path, cell_pixels=16):
        write_ppm(path, self.as_image(cell_pixels))
        return path


def objectness_heatmap(detector, image):
    """
    Sum of the sigmoid objectness scores of all boxes of every cell.

    :rtype: :class:`HeatMap`
    """
    objectness, _ = slot_scores(detector.forward(image))
    return HeatMap(objectness.sum(axis=-1), 'objectness-sum',
                   detector.config.boxes_per_cell)


def class_map(detector, image):
    """
    Class with the highest probability over all boxes of every cell (the
    lowest class id on ties).

    :rtype: :class:`HeatMap`
    """
    _, probabilities = slot_scores(detector.forward(image))
    best = probabilities.max(axis=2)
    return HeatMap(np.argmax(best, axis=-1), 'class-argmax',
                   detector.config.num_classes)
