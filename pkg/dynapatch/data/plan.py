# -*- coding: utf-8 -*-


"""
Angle dependent patch plans.

A plan partitions a view angle range into contiguous bins and assigns one
patch set to every bin. Plans are stored as a directory holding
`plan.json` and the patch files of every bin.
"""


import json
import pathlib

import numpy as np

from dynapatch.data.patch import Patch
from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import PatchFileError, SplitPlanError


# boundaries of adjacent plans closer than this are considered equal
BOUNDARY_TOLERANCE = 1.0E-9


def equal_width_boundaries(angle_range, count):
    """
    Boundaries of `count` contiguous equal-width bins covering a range.
    """
    low, high = (float(a) for a in angle_range)
    if count < 1:
        raise SplitPlanError("number of bins must be positive (got {})"
                             .format(count))
    if not low < high:
        raise SplitPlanError("invalid angle range [{}, {}]".format(low, high))
    boundaries = np.linspace(low, high, count + 1)
    boundaries[0], boundaries[-1] = low, high
    return [float(b) for b in boundaries]


class SplitPlan(object):
    """
    Patch sets switched by view angle

    :param boundaries: k + 1 strictly increasing angles, bin i covering
        [b_i, b_i+1) and the last bin also covering its upper boundary
    :type boundaries: `list`
    :param patch_sets: one list of patches per bin
    :type patch_sets: `list`
    :param rate: overall success rate in percent (None if not evaluated)
    :type rate: `float`
    :param bin_rates: optional per-bin success rates in percent
    :type bin_rates: `list`
    :param history: optional (subset count, rate) pairs of the search that
        produced the plan
    :type history: `list`
    :param loss_kinds: loss kind the patches of every bin were crafted with
    :type loss_kinds: `list`
    :raises SplitPlanError: if boundaries and patch sets do not match
    """

    def __init__(self, boundaries, patch_sets, rate=None, bin_rates=None,
                 history=None, loss_kinds=None):
        self.boundaries = [float(b) for b in boundaries]
        self.patch_sets = [list(patches) for patches in patch_sets]
        if len(self.boundaries) < 2:
            raise SplitPlanError("a plan needs at least two boundaries (got "
                                 "{})".format(self.boundaries))
        if np.any(np.diff(self.boundaries) <= 0.0):
            raise SplitPlanError("plan boundaries {} are not strictly "
                                 "increasing".format(self.boundaries))
        if len(self.patch_sets) != self.subset_count:
            raise SplitPlanError("plan with {} bins got {} patch sets".format(
                self.subset_count, len(self.patch_sets)))
        self.rate = rate
        self.bin_rates = None if bin_rates is None else list(bin_rates)
        self.history = [tuple(h) for h in (history or [])]
        if loss_kinds is None:
            loss_kinds = [patches[0].loss_kind if patches else None
                          for patches in self.patch_sets]
        self.loss_kinds = list(loss_kinds)

    def __repr__(self):
        return "SplitPlan(k={}, boundaries={}, rate={})".format(
            self.subset_count, self.boundaries, self.rate)

    @property
    def subset_count(self):
        return len(self.boundaries) - 1

    @property
    def angle_range(self):
        return (self.boundaries[0], self.boundaries[-1])

    @classmethod
    def single(cls, patches, angle_range):
        """
        Plan using one patch set for the whole range.
        """
        return cls(list(angle_range), [patches])

    def bin_index(self, angle):
        """
        Index of the bin containing an angle.

        :raises SplitPlanError: if the angle lies outside the plan range
        """
        low, high = self.angle_range
        if not low <= angle <= high:
            raise SplitPlanError("angle {} lies outside the plan range [{}, "
                                 "{}]".format(angle, low, high))
        index = int(np.searchsorted(self.boundaries, angle, side='right')) - 1
        return min(index, self.subset_count - 1)

    def patches_for(self, angle):
        return self.patch_sets[self.bin_index(angle)]

    def bins(self):
        """
        (low, high) range of every bin.
        """
        return list(zip(self.boundaries[:-1], self.boundaries[1:]))

    @classmethod
    def concatenate(cls, plans):
        """
        Join plans of adjacent angle ranges into one plan.

        :param plans: plans ordered by angle, the upper boundary of every
            plan equal to the lower boundary of its successor
        :type plans: `list` of :class:`SplitPlan`
        :rtype: :class:`SplitPlan`
        :raises SplitPlanError: on gaps or overlaps between the plans
        """
        plans = list(plans)
        if not plans:
            raise SplitPlanError("cannot concatenate an empty list of plans")
        boundaries = list(plans[0].boundaries)
        patch_sets = list(plans[0].patch_sets)
        loss_kinds = list(plans[0].loss_kinds)
        bin_rates = list(plans[0].bin_rates or [None] * plans[0].subset_count)
        for plan in plans[1:]:
            gap = plan.boundaries[0] - boundaries[-1]
            if abs(gap) > BOUNDARY_TOLERANCE:
                kind = 'gap' if gap > 0 else 'overlap'
                raise SplitPlanError("cannot concatenate plans: {} between "
                                     "{} and {}".format(kind, boundaries[-1],
                                                        plan.boundaries[0]))
            boundaries.extend(plan.boundaries[1:])
            patch_sets.extend(plan.patch_sets)
            loss_kinds.extend(plan.loss_kinds)
            bin_rates.extend(plan.bin_rates or [None] * plan.subset_count)
        if all(r is None for r in bin_rates):
            bin_rates = None
        return cls(boundaries, patch_sets, bin_rates=bin_rates,
                   loss_kinds=loss_kinds)

    def as_dict(self):
        return {
            'subset_count': self.subset_count,
            'boundaries': self.boundaries,
            'rate': self.rate,
            'bin_rates': self.bin_rates,
            'history': [list(h) for h in self.history],
            'loss_kinds': self.loss_kinds,
            'patches': [["bin_{:02d}_slot_{}".format(i, p.slot)
                         for p in patches]
                        for (i, patches) in enumerate(self.patch_sets)],
        }

    def write(self, directory):
        """
        Write `plan.json` and all patch files to a directory.

        :returns: paths of all written files
        :rtype: `list`
        """
        directory = pathlib.Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        content = self.as_dict()
        written = []
        for stems, patches in zip(content['patches'], self.patch_sets):
            for stem, patch in zip(stems, patches):
                written.extend(patch.write(directory / stem))
        plan_path = directory / FileDefaults.FNAMES['plan']
        with open(plan_path, 'w') as plan_file:
            json.dump(content, plan_file, indent=2, sort_keys=True)
            plan_file.write('\n')
        written.append(plan_path)
        return written

    @classmethod
    def read(cls, directory):
        """
        Read a plan written by :meth:`write`.

        :raises PatchFileError: if the plan file is missing or invalid
        """
        directory = pathlib.Path(directory)
        plan_path = directory / FileDefaults.FNAMES['plan']
        if not plan_path.is_file():
            raise PatchFileError("missing plan file '{}'".format(plan_path))
        with open(plan_path, 'r') as plan_file:
            try:
                content = json.load(plan_file)
            except ValueError as exception:
                raise PatchFileError("unable to parse plan file '{}': {}"
                                     .format(plan_path, exception))
        try:
            patch_sets = [[Patch.read(directory / stem) for stem in stems]
                          for stems in content['patches']]
            return cls(content['boundaries'], patch_sets,
                       rate=content.get('rate'),
                       bin_rates=content.get('bin_rates'),
                       history=content.get('history'),
                       loss_kinds=content.get('loss_kinds'))
        except KeyError as exception:
            raise PatchFileError("plan file '{}' lacks required key {}"
                                 .format(plan_path, exception))
