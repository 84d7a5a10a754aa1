# -*- coding: utf-8 -*-


"""
Supervised training of the grid detector on annotated frames.
"""


import logging
import warnings

import numpy as np

from dynapatch.detector.postprocess import detect, detects_class
from dynapatch.tensor import Adam, Tensor
from dynapatch.tensor import functional as F
from dynapatch.utils.defaults import TrainingDefaults, SceneDefaults
from dynapatch.utils.exceptions import DatasetError, DetectorConfigError


logger = logging.getLogger(__name__)


class TrainingConfig(object):
    """
    Hyper-parameters of detector training

    :param epochs: number of scheduled passes over the training frames
    :param max_epochs: bound on the passes when training continues past
        the schedule because the clean detection rate is still below the
        required rate
    :param learning_rate: Adam step size
    :param batch_size: frames per optimizer step
    :param holdout_fraction: fraction of frames kept back to measure the
        clean detection rate (if zero the rate is measured on the training
        frames)
    :param target_class: class whose detection rate decides success
    :param seed: seed of the shuffling and the holdout selection
    """

    def __init__(self, epochs=None, learning_rate=None, batch_size=None,
                 holdout_fraction=None, target_class=None, seed=0,
                 max_epochs=None):
        def default(value, fallback):
            return fallback if value is None else value
        self.epochs = int(default(epochs, TrainingDefaults.EPOCHS))
        self.max_epochs = int(default(max_epochs,
                                      TrainingDefaults.MAX_EPOCHS))
        self.learning_rate = float(default(learning_rate,
                                           TrainingDefaults.LEARNING_RATE))
        self.batch_size = int(default(batch_size,
                                      TrainingDefaults.BATCH_SIZE))
        self.holdout_fraction = float(default(
            holdout_fraction, TrainingDefaults.HOLDOUT_FRACTION))
        self.target_class = int(default(target_class,
                                        SceneDefaults.TARGET_CLASS))
        self.seed = int(seed)
        if self.epochs < 0 or self.batch_size < 1 or self.learning_rate <= 0:
            raise DetectorConfigError("invalid training schedule (epochs {}, "
                                      "batch size {}, learning rate {})"
                                      .format(self.epochs, self.batch_size,
                                              self.learning_rate))
        if self.max_epochs < self.epochs:
            raise DetectorConfigError("maximum number of epochs {} is below "
                                      "the scheduled {} epochs".format(
                                          self.max_epochs, self.epochs))
        if not 0.0 <= self.holdout_fraction < 1.0:
            raise DetectorConfigError("holdout fraction must be in [0, 1) "
                                      "(got {})".format(
                                          self.holdout_fraction))


class TrainingResult(object):
    """
    Outcome of a training run

    :param detector: the trained detector
    :param epoch_losses: mean grid loss per epoch
    :param detection_rate: clean detection rate of the target class on the
        evaluation frames (fraction in [0, 1])
    :param evaluated_frames: number of target frames the rate is based on
    :param required_rate: rate required for a successful run
    """

    def __init__(self, detector, epoch_losses, detection_rate,
                 evaluated_frames, required_rate=None):
        self.detector = detector
        self.epoch_losses = list(epoch_losses)
        self.detection_rate = detection_rate
        self.evaluated_frames = evaluated_frames
        self.required_rate = (TrainingDefaults.REQUIRED_DETECTION_RATE
                              if required_rate is None else required_rate)

    @property
    def success(self):
        return self.detection_rate >= self.required_rate

    @property
    def message(self):
        if self.success:
            return ("training converged: clean detection rate {:.2%}"
                    .format(self.detection_rate))
        return ("training failed: clean detection rate {:.2%} is below the "
                "required {:.0%}".format(self.detection_rate,
                                         self.required_rate))


def encode_targets(frame, config):
    """
    Build target values and masks of the grid loss for a single frame.

    Every truth box is assigned to box 0 of the cell containing its center.

    :returns: dict of numpy arrays `geometry` (S, S, B, 4), `responsible`
        (S, S, B), `classes` (S, S, B, C) one-hot
    """
    grid, boxes = config.grid_size, config.boxes_per_cell
    geometry = np.zeros((grid, grid, boxes, 4))
    responsible = np.zeros((grid, grid, boxes))
    classes = np.zeros((grid, grid, boxes, config.num_classes))
    for truth in frame.truths:
        if not 0 <= truth.class_id < config.num_classes:
            raise DatasetError("truth class {} exceeds the detector's {} "
                               "classes".format(truth.class_id,
                                                config.num_classes))
        cx, cy, w, h = truth.box
        col = min(int(np.floor(cx * grid)), grid - 1)
        row = min(int(np.floor(cy * grid)), grid - 1)
        geometry[row, col, 0] = (cx * grid - col, cy * grid - row, w, h)
        responsible[row, col, 0] = 1.0
        classes[row, col, 0, truth.class_id] = 1.0
    return {'geometry': geometry, 'responsible': responsible,
            'classes': classes}


def grid_loss(raw, targets, coord_weight=None, noobj_weight=None):
    """
    Supervised grid loss of one frame.

    Squared errors on the decoded box geometry and the objectness of the
    responsible slots, cross-entropy on their class logits and a squared
    objectness penalty on all other slots.

    :param raw: raw grid output (S, S, B, 5 + C)
    :type raw: :class:`~dynapatch.tensor.Tensor`
    :param targets: output of :func:`encode_targets`
    :type targets: `dict`
    :rtype: :class:`~dynapatch.tensor.Tensor`
    """
    coord_weight = (TrainingDefaults.COORD_WEIGHT if coord_weight is None
                    else coord_weight)
    noobj_weight = (TrainingDefaults.NOOBJ_WEIGHT if noobj_weight is None
                    else noobj_weight)
    responsible = targets['responsible']
    geometry = F.sigmoid(raw[..., 0:4])
    mask4 = np.repeat(responsible[..., None], 4, axis=-1)
    geometry_error = (geometry - targets['geometry']) * mask4
    coord_term = (geometry_error * geometry_error).sum() * coord_weight
    objectness = F.sigmoid(raw[..., 4])
    obj_error = (objectness - 1.0) * responsible
    noobj_error = objectness * (1.0 - responsible)
    obj_term = ((obj_error * obj_error).sum() +
                (noobj_error * noobj_error).sum() * noobj_weight)
    log_probs = F.log_softmax(raw[..., 5:], axis=-1)
    class_term = -(log_probs * targets['classes']).sum()
    return coord_term + obj_term + class_term


def clean_detection_rate(detector, frames, target_class):
    """
    Fraction of frames showing the target class in which the detector
    reports the target class (no patches applied).

    :returns: (rate, number of evaluated frames)
    :rtype: `tuple`
    """
    targets = [f for f in frames
               if any(t.class_id == target_class for t in f.truths)]
    if not targets:
        return 0.0, 0
    detected = sum(detects_class(detect(detector, f.image), [target_class])
                   for f in targets)
    return detected / len(targets), len(targets)


def split_holdout(frames, fraction, rng):
    """
    Split frames into a training and a holdout part.
    """
    count = int(round(len(frames) * fraction))
    order = rng.permutation(len(frames))
    holdout = sorted(order[:count])
    training = sorted(order[count:])
    return [frames[i] for i in training], [frames[i] for i in holdout]


def train_detector(detector, frames, config=None):
    """
    Train a detector on annotated frames with Adam.

    The detector is trained in place for the scheduled epochs. While the
    clean detection rate on the holdout frames stays below the required
    rate training continues one epoch at a time up to `max_epochs`. A rate
    still below the required one is reported by a warning and by the
    returned result, never silently.

    :param detector: detector to train
    :type detector: :class:`~dynapatch.detector.network.Detector`
    :param frames: training frames carrying ground-truth boxes
    :type frames: `list` of :class:`~dynapatch.data.frame.Frame`
    :param config: training hyper-parameters
    :type config: :class:`TrainingConfig`
    :rtype: :class:`TrainingResult`
    :raises DatasetError: if frames is empty or lacks ground truth
    """
    config = config or TrainingConfig()
    if not frames:
        raise DatasetError("cannot train a detector without frames")
    for frame in frames:
        if not frame.truths:
            raise DatasetError("training frame at angle {} carries no "
                               "ground-truth box".format(frame.angle))
    rng = np.random.default_rng(config.seed)
    training, holdout = split_holdout(frames, config.holdout_fraction, rng)
    if not training:
        raise DatasetError("holdout fraction {} leaves no training frames"
                           .format(config.holdout_fraction))
    targets = [encode_targets(f, detector.config) for f in training]
    detector.set_trainable(True)
    optimizer = Adam(detector.weights, learning_rate=config.learning_rate)
    epoch_losses = []

    def run_epoch():
        order = rng.permutation(len(training))
        batch_losses = []
        for start in range(0, len(order), config.batch_size):
            batch = order[start:start + config.batch_size]
            losses = [grid_loss(detector.forward(Tensor(training[i].image)),
                                targets[i]) for i in batch]
            loss = F.total(losses) * (1.0 / len(batch))
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            batch_losses.append(loss.item())
        epoch_losses.append(float(np.mean(batch_losses)))
        logger.info("epoch {}/{}: mean grid loss {:.6f}".format(
            len(epoch_losses), config.epochs, epoch_losses[-1]))

    evaluation = holdout if holdout else training
    for _ in range(config.epochs):
        run_epoch()
    rate, count = clean_detection_rate(detector, evaluation,
                                       config.target_class)
    result = TrainingResult(detector, epoch_losses, rate, count)
    while not result.success and len(epoch_losses) < config.max_epochs:
        logger.info("clean detection rate {:.2%} after {} epochs, "
                    "continuing".format(rate, len(epoch_losses)))
        run_epoch()
        rate, count = clean_detection_rate(detector, evaluation,
                                           config.target_class)
        result = TrainingResult(detector, epoch_losses, rate, count)
    detector.set_trainable(False)
    if result.success:
        logger.info(result.message)
    else:
        warnings.warn(result.message)
    return result
