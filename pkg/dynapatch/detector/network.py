# -*- coding: utf-8 -*-


"""
Miniature single-stage grid detector.

The network is a plain stack of convolutions with leaky-relu activations
followed by a 1x1 prediction head. The head's output channels are
reinterpreted as S x S x B x (5 + C) raw grid output holding, per slot,
the values [tx, ty, tw, th, to, class logits...].
"""


import logging

import numpy as np

from dynapatch.detector.config import DetectorConfig
from dynapatch.tensor import Tensor, as_tensor
from dynapatch.tensor import functional as F
from dynapatch.utils.exceptions import DetectorConfigError


logger = logging.getLogger(__name__)


class Detector(object):
    """
    Grid detector with weights stored as ordered list of tensors

    Weights are ordered layer by layer as kernel followed by bias, the
    prediction head last.

    :param config: structural configuration
    :type config: :class:`~dynapatch.detector.config.DetectorConfig`
    :param weights: list of weight arrays / tensors in declared layer order
    :type weights: `list`
    """

    def __init__(self, config, weights):
        self.config = config
        shapes = self.weight_shapes(config)
        if len(weights) != len(shapes):
            raise DetectorConfigError("expected {} weight tensors but got {}"
                                      .format(len(shapes), len(weights)))
        self.weights = []
        for shape, weight in zip(shapes, weights):
            tensor = weight if isinstance(weight, Tensor) else Tensor(weight)
            if tensor.shape != shape:
                raise DetectorConfigError("weight tensor of shape {} does not "
                                          "match the expected shape {}"
                                          .format(tensor.shape, shape))
            self.weights.append(tensor)

    @staticmethod
    def weight_shapes(config):
        """
        Shapes of all weight tensors in declared layer order.
        """
        shapes = []
        channels = 3
        for (out_channels, kernel, _) in config.conv_layers:
            shapes.append((out_channels, channels, kernel, kernel))
            shapes.append((out_channels,))
            channels = out_channels
        head_channels = config.boxes_per_cell * config.slot_size
        shapes.append((head_channels, channels, 1, 1))
        shapes.append((head_channels,))
        return shapes

    @classmethod
    def zeros(cls, config=None):
        """
        Detector with all weights set to zero.
        """
        config = config or DetectorConfig()
        return cls(config, [np.zeros(s) for s in cls.weight_shapes(config)])

    @classmethod
    def initialize(cls, config=None, seed=0):
        """
        Detector with seeded random weights (He-normal kernels, zero bias).

        :param config: structural configuration (defaults if `None`)
        :param seed: seed of the weight initialization
        :type seed: `int`
        """
        config = config or DetectorConfig()
        rng = np.random.default_rng(seed)
        weights = []
        for shape in cls.weight_shapes(config):
            if len(shape) == 1:
                weights.append(np.zeros(shape))
                continue
            fan_in = shape[1] * shape[2] * shape[3]
            weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=shape))
        # small head output keeps initial predictions close to uniform
        weights[-2] *= 0.1
        logger.debug("initialized detector weights with seed {}"
                     .format(seed))
        return cls(config, weights)

    @property
    def parameter_count(self):
        return int(sum(w.size for w in self.weights))

    def set_trainable(self, trainable):
        """
        Switch gradient accumulation for all weights on or off.
        """
        for weight in self.weights:
            weight.requires_grad = bool(trainable)
            weight.zero_grad()

    def copy(self):
        return Detector(self.config, [w.values.copy() for w in self.weights])

    def forward(self, image):
        """
        Compute the raw grid output for a single image.

        :param image: input image of shape (3, input_size, input_size)
        :type image: :class:`~dynapatch.tensor.Tensor` or `numpy.ndarray`
        :returns: raw grid output of shape (S, S, B, 5 + C)
        :rtype: :class:`~dynapatch.tensor.Tensor`
        :raises DetectorConfigError: if the image has the wrong shape
        """
        image = as_tensor(image)
        size = self.config.input_size
        if image.shape != (3, size, size):
            raise DetectorConfigError("detector expects an image of shape "
                                      "(3, {0}, {0}) but got {1}"
                                      .format(size, image.shape))
        features = image
        for index, (_, kernel, stride) in enumerate(self.config.conv_layers):
            features = F.conv2d(features, self.weights[2 * index],
                                stride=stride, padding=kernel // 2,
                                bias=self.weights[2 * index + 1])
            features = F.leaky_relu(features)
        head = F.conv2d(features, self.weights[-2], bias=self.weights[-1])
        grid, boxes = self.config.grid_size, self.config.boxes_per_cell
        head = head.reshape(boxes, self.config.slot_size, grid, grid)
        return head.transpose(2, 3, 0, 1)
