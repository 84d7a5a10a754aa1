# -*- coding: utf-8 -*-


"""
Non-differentiable postprocessing of raw grid output: decoding of slots
into detections and class-wise greedy non-maximum suppression.
"""


import collections

import numpy as np

from dynapatch.utils.defaults import DetectorDefaults
from dynapatch.utils.geometry import iou


Detection = collections.namedtuple('Detection', [
    'box', 'objectness', 'class_probs', 'class_id', 'slot'])
Detection.__doc__ = """
Single decoded prediction

box: normalized (cx, cy, w, h); objectness in [0, 1]; class_probs: length C
probability vector; class_id: its argmax (lowest id on ties); slot: flat
index of the producing grid slot
"""


def _raw_values(raw):
    return np.asarray(getattr(raw, 'values', raw), dtype=np.float64)


def sigmoid(values):
    return 0.5 * (1.0 + np.tanh(0.5 * values))


def softmax(values, axis=-1):
    shifted = values - np.max(values, axis=axis, keepdims=True)
    exponentials = np.exp(shifted)
    return exponentials / np.sum(exponentials, axis=axis, keepdims=True)


def slot_scores(raw):
    """
    Objectness (S, S, B) and class probabilities (S, S, B, C) of all slots.
    """
    values = _raw_values(raw)
    return sigmoid(values[..., 4]), softmax(values[..., 5:], axis=-1)


def decode(raw, threshold=None):
    """
    Decode raw grid output into detections.

    One detection is returned per slot with objectness >= threshold, in
    flat slot order. Box centers are given relative to the image by
    cx = (col + sigmoid(tx)) / S (likewise for cy and the row), box sizes
    as sigmoid(tw) and sigmoid(th).

    :param raw: raw grid output of shape (S, S, B, 5 + C)
    :type raw: :class:`~dynapatch.tensor.Tensor` or `numpy.ndarray`
    :param threshold: detection threshold (default 0.5)
    :type threshold: `float`
    :rtype: `list` of :class:`Detection`
    """
    if threshold is None:
        threshold = DetectorDefaults.DETECTION_THRESHOLD
    values = _raw_values(raw)
    grid, _, boxes = values.shape[:3]
    objectness, probs = slot_scores(values)
    geometry = sigmoid(values[..., :4])
    detections = []
    for flat_index in np.flatnonzero(objectness.reshape(-1) >= threshold):
        row, col, box = np.unravel_index(flat_index, (grid, grid, boxes))
        tx, ty, tw, th = geometry[row, col, box]
        class_probs = probs[row, col, box]
        detections.append(Detection(
            box=((col + tx) / grid, (row + ty) / grid, tw, th),
            objectness=float(objectness[row, col, box]),
            class_probs=tuple(float(p) for p in class_probs),
            class_id=int(np.argmax(class_probs)),
            slot=int(flat_index)))
    return detections


def nms(detections, iou_threshold=None):
    """
    Greedy class-wise non-maximum suppression.

    Detections are visited by descending objectness (ties by lower slot
    index); a detection is kept if its IoU with every previously kept
    detection of the same class is at most iou_threshold.

    :param detections: decoded detections
    :type detections: `list` of :class:`Detection`
    :param iou_threshold: suppression threshold (default 0.4)
    :type iou_threshold: `float`
    :returns: kept detections in visiting order
    :rtype: `list` of :class:`Detection`
    """
    if iou_threshold is None:
        iou_threshold = DetectorDefaults.NMS_IOU_THRESHOLD
    ordered = sorted(detections, key=lambda d: (-d.objectness, d.slot))
    kept = []
    for candidate in ordered:
        if all(iou(candidate.box, other.box) <= iou_threshold
               for other in kept if other.class_id == candidate.class_id):
            kept.append(candidate)
    return kept


def detect(detector, image):
    """
    Run forward, decode and nms on a single image.

    :rtype: `list` of :class:`Detection`
    """
    raw = detector.forward(image)
    config = detector.config
    return nms(decode(raw, config.detection_threshold),
               config.nms_iou_threshold)


def detects_class(detections, class_ids):
    """
    Check if any detection carries one of the given class ids.
    """
    class_ids = set(class_ids)
    return any(d.class_id in class_ids for d in detections)
