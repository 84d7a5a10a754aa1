# -*- coding: utf-8 -*-


"""
Dynamic split search: grows the number of angle bins with their own patch
sets as long as the switched patches improve the success rate.
"""


import logging

from dynapatch.attack.crafting import craft_patches
from dynapatch.data.plan import SplitPlan, equal_width_boundaries
from dynapatch.evaluation.metrics import (attack_success_rate,
                                          semantic_success_rate)
from dynapatch.utils.exceptions import SplitPlanError


logger = logging.getLogger(__name__)


def split_frames(frames, boundaries):
    """
    Partition frames into the bins given by the boundaries.

    :returns: one frame list per bin, every list keeping the input order
    :raises SplitPlanError: if a bin holds no frames or a frame lies
        outside the covered range
    """
    bins = SplitPlan(boundaries, [[] for _ in boundaries[1:]])
    subsets = [[] for _ in range(bins.subset_count)]
    for frame in frames:
        subsets[bins.bin_index(frame.angle)].append(frame)
    for index, subset in enumerate(subsets):
        if not subset:
            low, high = bins.bins()[index]
            raise SplitPlanError("angle bin [{:.3f}, {:.3f}] of {} bins "
                                 "holds no frames".format(
                                     low, high, bins.subset_count))
    return subsets


def default_evaluator(frames, plan, detector, config):
    """
    Switched-patch success rate on the test frames; semantic runs are
    scored with the semantic success rate.
    """
    if config.loss_kind == 'semantic':
        return semantic_success_rate(frames, plan, detector,
                                     config.semantic_classes)
    return attack_success_rate(frames, plan, detector, config.target_class)


class DynamicSplitSearch(object):
    """
    Search for the number of angle bins with the best switched-patch
    success rate.

    The search starts with a single patch set for the whole range. It
    then repeatedly increments the number of bins k, splits the training
    and test frames into k contiguous equal-width angle bins, crafts one
    patch set per bin and evaluates the switched patches on the test
    frames. As soon as the new rate does not exceed the former one the
    former plan is returned.

    .. code-block:: text

        k = 1 ---> craft ---> evaluate (former rate)
                                  |
            .---------------------'
            V
        k = k + 1 ---> split ---> craft per bin ---> evaluate
            ^                                          |
            |          new rate > former rate          |
            '------------------------------------------+
                                                       |
                       new rate <= former rate         V
                                               return former plan

    :param train: crafting frames sorted by angle
    :param test: evaluation frames sorted by angle
    :param n_screens: number of screen slots (patches per bin)
    :param config: attack configuration (`max_subsets` bounds k)
    :type config: :class:`~dynapatch.attack.config.AttackConfig`
    :param detector: the attacked detector
    :param angle_range: (low, high) range split into bins, defaults to the
        range spanned by the training and test frames
    :param crafter: patch crafting callable with the signature of
        :func:`~dynapatch.attack.crafting.craft_patches`
    :param evaluator: callable (frames, plan, detector, config) returning
        an object with a `success_rate` attribute
    """

    def __init__(self, train, test, n_screens, config, detector,
                 angle_range=None, crafter=None, evaluator=None):
        self.train = list(train)
        self.test = list(test)
        self.n_screens = n_screens
        self.config = config
        self.detector = detector
        self.angle_range = angle_range
        self.crafter = crafter or craft_patches
        self.evaluator = evaluator or default_evaluator
        self.history = []
        self.warnings = []
        self.former = None

    def verify_inputs(self):
        """
        Check the frame sets and the angle range.
        """
        if not self.train or not self.test:
            raise SplitPlanError("the split search requires training and "
                                 "test frames")
        for name, frames in (('training', self.train), ('test', self.test)):
            angles = [f.angle for f in frames]
            if angles != sorted(angles):
                raise SplitPlanError("{} frames are not sorted by angle"
                                     .format(name))
        if self.angle_range is None:
            angles = [f.angle for f in self.train + self.test]
            self.angle_range = (min(angles), max(angles))
        self.angle_range = tuple(float(a) for a in self.angle_range)

    def subset_limit_reached(self, count):
        limit = self.config.max_subsets
        return limit is not None and count > int(limit)

    def build_plan(self, count):
        """
        Split the frames into `count` bins, craft and evaluate their
        patch sets.

        :raises SplitPlanError: if a bin holds no frames
        """
        boundaries = equal_width_boundaries(self.angle_range, count)
        train_subsets = split_frames(self.train, boundaries)
        split_frames(self.test, boundaries)
        patch_sets = []
        for index, (subset, bounds) in enumerate(zip(
                train_subsets, zip(boundaries[:-1], boundaries[1:]))):
            logger.info("k={}: crafting bin {} [{:.3f}, {:.3f}] on {} frames"
                        .format(count, index, bounds[0], bounds[1],
                                len(subset)))
            result = self.crafter(subset, self.n_screens, self.config,
                                  self.detector, stream=(count, index),
                                  angle_subset=bounds)
            self.warnings.extend(getattr(result, 'warnings', []))
            patch_sets.append(list(getattr(result, 'patches', result)))
        plan = SplitPlan(boundaries, patch_sets,
                         loss_kinds=[self.config.loss_kind] * count)
        report = self.evaluator(self.test, plan, self.detector, self.config)
        plan.rate = report.success_rate
        plan.bin_rates = getattr(report, 'bin_rates', None)
        self.history.append((count, plan.rate))
        logger.info("k={}: success rate {:.2f}%".format(count, plan.rate))
        return plan

    def run(self):
        """
        Run the search.

        :rtype: :class:`~dynapatch.data.plan.SplitPlan`
        :raises SplitPlanError: if a bin of any tried plan holds no frames
        """
        self.verify_inputs()
        self.former = self.build_plan(1)
        count = 1
        while True:
            count += 1
            if self.subset_limit_reached(count):
                logger.info("stopping at the subset limit of {}".format(
                    self.config.max_subsets))
                break
            plan = self.build_plan(count)
            if plan.rate <= self.former.rate:
                logger.info("k={} does not improve on k={} ({:.2f}% <= "
                            "{:.2f}%)".format(count, self.former.subset_count,
                                              plan.rate, self.former.rate))
                break
            self.former = plan
        self.former.history = list(self.history)
        return self.former


def dynamic_split_search(train, test, n_screens, config, detector,
                         angle_range=None, crafter=None, evaluator=None):
    """
    Run a :class:`DynamicSplitSearch` and return the chosen plan.

    :rtype: :class:`~dynapatch.data.plan.SplitPlan`
    :raises SplitPlanError: if a bin of any tried plan is empty or the
        frames are not sorted by angle
    """
    search = DynamicSplitSearch(train, test, n_screens, config, detector,
                                angle_range=angle_range, crafter=crafter,
                                evaluator=evaluator)
    return search.run()
