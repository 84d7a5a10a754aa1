# -*- coding: utf-8 -*-


"""
Configuration of the miniature grid detector.
"""


from dynapatch.utils.defaults import DetectorDefaults
from dynapatch.utils.exceptions import DetectorConfigError


class DetectorConfig(object):
    """
    Structural and postprocessing parameters of a grid detector

    The convolution stack is given as sequence of (channels, kernel,
    stride) triples. Every layer uses "same" padding (kernel // 2), hence
    the final feature map has size input_size / prod(strides) which has to
    equal the grid size.

    :param grid_size: cells per image side S
    :type grid_size: `int`
    :param boxes_per_cell: predictions per cell B
    :type boxes_per_cell: `int`
    :param num_classes: number of object classes C
    :type num_classes: `int`
    :param input_size: square input image size in pixels
    :type input_size: `int`
    :param conv_layers: convolution stack specification
    :type conv_layers: `tuple`
    :param detection_threshold: minimum objectness of a reported detection
    :type detection_threshold: `float`
    :param nms_iou_threshold: maximum IoU between kept detections of the
        same class
    :type nms_iou_threshold: `float`
    """

    FIELDS = ('grid_size', 'boxes_per_cell', 'num_classes', 'input_size',
              'conv_layers', 'detection_threshold', 'nms_iou_threshold')

    def __init__(self, grid_size=None, boxes_per_cell=None, num_classes=None,
                 input_size=None, conv_layers=None, detection_threshold=None,
                 nms_iou_threshold=None):
        def default(value, fallback):
            return fallback if value is None else value
        self.grid_size = int(default(grid_size, DetectorDefaults.GRID_SIZE))
        self.boxes_per_cell = int(default(boxes_per_cell,
                                          DetectorDefaults.BOXES_PER_CELL))
        self.num_classes = int(default(num_classes,
                                       DetectorDefaults.NUM_CLASSES))
        self.input_size = int(default(input_size,
                                      DetectorDefaults.INPUT_SIZE))
        self.conv_layers = tuple(
            tuple(int(v) for v in layer)
            for layer in default(conv_layers, DetectorDefaults.CONV_LAYERS))
        self.detection_threshold = float(default(
            detection_threshold, DetectorDefaults.DETECTION_THRESHOLD))
        self.nms_iou_threshold = float(default(
            nms_iou_threshold, DetectorDefaults.NMS_IOU_THRESHOLD))
        self.validate()

    def validate(self):
        """
        Check the configuration for consistency.

        :raises DetectorConfigError: if any parameter is out of range or if
            the convolution stack does not map the input onto the grid
        """
        for name in ('grid_size', 'boxes_per_cell', 'num_classes',
                     'input_size'):
            if getattr(self, name) < 1:
                raise DetectorConfigError("'{}' must be a positive integer "
                                          "(got {})".format(
                                              name, getattr(self, name)))
        for name in ('detection_threshold', 'nms_iou_threshold'):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise DetectorConfigError("'{}' must be in [0, 1] (got {})"
                                          .format(name, getattr(self, name)))
        if not self.conv_layers:
            raise DetectorConfigError("the convolution stack must not be "
                                      "empty")
        size = self.input_size
        for (channels, kernel, stride) in self.conv_layers:
            if channels < 1 or kernel < 1 or kernel % 2 == 0 or stride < 1:
                raise DetectorConfigError("invalid convolution layer "
                                          "({}, {}, {}): channels and stride "
                                          "must be positive, kernel positive "
                                          "and odd".format(channels, kernel,
                                                           stride))
            if size % stride != 0:
                raise DetectorConfigError("input size {} is not divisible by "
                                          "the stride product of the "
                                          "convolution stack".format(
                                              self.input_size))
            size //= stride
        if size != self.grid_size:
            raise DetectorConfigError("convolution stack maps input size {} "
                                      "onto a {}x{} feature map but the grid "
                                      "size is {}".format(
                                          self.input_size, size, size,
                                          self.grid_size))

    @property
    def slot_size(self):
        """
        Number of values predicted per slot (tx, ty, tw, th, to, C logits).
        """
        return 5 + self.num_classes

    @property
    def output_shape(self):
        return (self.grid_size, self.grid_size, self.boxes_per_cell,
                self.slot_size)

    def as_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}

    def __eq__(self, other):
        return (isinstance(other, DetectorConfig) and
                self.as_dict() == other.as_dict())

    def __repr__(self):
        return "DetectorConfig({})".format(", ".join(
            "{}={!r}".format(k, v) for (k, v) in self.as_dict().items()))
