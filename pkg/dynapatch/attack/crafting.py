# -*- coding: utf-8 -*-


"""
Patch generation: seeded random initialization followed by Adam updates
of the crafting objective under random appearance transformations.
"""


import collections
import logging
import warnings

import numpy as np

from dynapatch.attack.objective import objective_terms
from dynapatch.data.patch import random_patch
from dynapatch.detector.training import clean_detection_rate
from dynapatch.placement.transforms import sample_transform
from dynapatch.tensor import Adam
from dynapatch.utils.defaults import AttackDefaults, TrainingDefaults
from dynapatch.utils.exceptions import AttackConfigError


logger = logging.getLogger(__name__)


ObjectiveRecord = collections.namedtuple('ObjectiveRecord', [
    'epoch', 'objective', 'tv', 'loss'])
ObjectiveRecord.__doc__ = """
Mean objective, total variation and loss values of the batches of an epoch
(evaluated before the respective update)
"""


class CraftResult(object):
    """
    Outcome of a crafting run

    :param patches: the crafted patches, one per screen slot
    :type patches: `list` of :class:`~dynapatch.data.patch.Patch`
    :param log: per-epoch objective records
    :type log: `list` of :class:`ObjectiveRecord`
    :param warnings: warnings raised during the run
    :type warnings: `list` of `str`
    :param clean_rate: clean detection rate of the target class on the
        crafting frames (None if no frame carries ground truth)
    """

    def __init__(self, patches, log, warnings=None, clean_rate=None):
        self.patches = list(patches)
        self.log = list(log)
        self.warnings = list(warnings or [])
        self.clean_rate = clean_rate

    @property
    def final_objective(self):
        return self.log[-1].objective if self.log else None

    def log_rows(self):
        return [tuple(record) for record in self.log]


def _check_frames(frames, n_screens):
    if not frames:
        raise AttackConfigError("cannot craft patches without frames")
    if n_screens < 1:
        raise AttackConfigError("number of screens must be positive (got {})"
                                .format(n_screens))
    for frame in frames:
        if not any(slot in frame.screens for slot in range(n_screens)):
            raise AttackConfigError("frame '{}' at angle {} shows none of the "
                                    "screens {}".format(
                                        frame.name, frame.angle,
                                        list(range(n_screens))))


def craft_patches(frames, n_screens, config, detector, stream=(),
                  transform_ranges=None, angle_subset=None):
    """
    Craft one patch per screen slot on a set of frames.

    Patches are initialized uniformly in the configured range and
    optimized for `config.epochs` passes over the shuffled frames. Every
    batch draws one fresh appearance transformation per patch; pixels are
    clamped to [0, 1] after every step.

    :param frames: crafting frames, each showing at least one screen
    :type frames: `list` of :class:`~dynapatch.data.frame.Frame`
    :param n_screens: number of screen slots (patches) to craft
    :type n_screens: `int`
    :param config: attack configuration
    :type config: :class:`~dynapatch.attack.config.AttackConfig`
    :param detector: the attacked detector (kept fixed)
    :type detector: :class:`~dynapatch.detector.network.Detector`
    :param stream: additional integers mixed into the seed so independent
        runs sharing one configuration draw independent numbers
    :type stream: `tuple`
    :param transform_ranges: optional sampling ranges of the transformation
    :param angle_subset: optional (low, high) angle range recorded in the
        patch metadata
    :rtype: :class:`CraftResult`
    :raises AttackConfigError: if a frame shows none of the screens
    """
    _check_frames(frames, n_screens)
    rng = np.random.default_rng([config.seed] + [int(s) for s in stream])
    patches = [random_patch(rng, slot, config.patch_height,
                            config.patch_width, AttackDefaults.INIT_RANGE)
               for slot in range(n_screens)]
    for patch in patches:
        patch.loss_kind = config.loss_kind
        patch.seed = config.seed
        patch.angle_subset = (None if angle_subset is None else
                              (float(angle_subset[0]),
                               float(angle_subset[1])))
    messages = []
    rate, count = clean_detection_rate(detector, frames, config.target_class)
    clean_rate = rate if count else None
    required = TrainingDefaults.REQUIRED_DETECTION_RATE
    if count and rate < required:
        message = ("detector reports the target class in only {:.2%} of the "
                   "clean crafting frames (required {:.0%})".format(rate,
                                                                    required))
        warnings.warn(message)
        messages.append(message)
    detector.set_trainable(False)
    optimizer = Adam([p.pixels for p in patches],
                     learning_rate=config.learning_rate, bounds=(0.0, 1.0))
    log = []
    for epoch in range(config.epochs):
        order = rng.permutation(len(frames))
        values = []
        for start in range(0, len(order), config.batch_size):
            batch = [frames[i] for i in order[start:start + config.batch_size]]
            transforms = {p.slot: sample_transform(rng, p.shape,
                                                   transform_ranges)
                          for p in patches}
            terms = objective_terms(patches, batch, config, detector,
                                    transforms)
            optimizer.zero_grad()
            terms.total.backward()
            optimizer.step()
            values.append((terms.total.item(), terms.tv.item(),
                           terms.loss.item()))
        mean = np.mean(values, axis=0)
        log.append(ObjectiveRecord(epoch + 1, float(mean[0]), float(mean[1]),
                                   float(mean[2])))
        logger.info("epoch {}/{}: objective {:.6f} (tv {:.4f}, loss {:.6f})"
                    .format(epoch + 1, config.epochs, *mean))
    for patch in patches:
        patch.iterations = optimizer.steps
    return CraftResult([p.detach() for p in patches], log, messages,
                       clean_rate)
