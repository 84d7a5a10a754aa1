# -*- coding: utf-8 -*-


"""
Crafting objective: weighted total variation of all patches plus the
batch mean of the attack loss on patched frames.
"""


import collections

from dynapatch.attack.losses import (detector_loss, semantic_loss,
                                     total_variation)
from dynapatch.placement.compositing import place_all
from dynapatch.tensor import functional as F
from dynapatch.utils.exceptions import AttackConfigError


ObjectiveTerms = collections.namedtuple('ObjectiveTerms', [
    'total', 'tv', 'loss'])
ObjectiveTerms.__doc__ = """
Objective value together with its (unweighted) total variation and loss
terms, all scalar tensors
"""


def frame_loss(raw, config):
    """
    Attack loss of a single raw grid output according to the loss kind.
    """
    if config.loss_kind == 'semantic':
        if config.semantic_base == 'obj':
            raise AttackConfigError("the semantic loss cannot use the obj "
                                    "base loss (obj has no class argument)")
        return semantic_loss(raw, config.semantic_classes,
                             config.semantic_base)
    return detector_loss(raw, config.loss_kind, config.target_class)


def objective_terms(patches, frames, config, detector, transforms=None):
    """
    Evaluate the objective and its terms.

    :param patches: patches placed on every frame
    :type patches: `list` of :class:`~dynapatch.data.patch.Patch`
    :param frames: the frame batch
    :type frames: `list` of :class:`~dynapatch.data.frame.Frame`
    :param config: attack configuration
    :type config: :class:`~dynapatch.attack.config.AttackConfig`
    :param detector: the attacked detector
    :param transforms: optional mapping slot id -> TransformParams
    :rtype: :class:`ObjectiveTerms`
    """
    if not frames:
        raise AttackConfigError("cannot evaluate the objective on an empty "
                                "batch")
    if patches:
        tv = F.total([total_variation(p) for p in patches])
    else:
        tv = F.constant(0.0)
    losses = [frame_loss(detector.forward(place_all(f, patches, transforms)),
                         config) for f in frames]
    loss = F.total(losses) * (1.0 / len(frames))
    return ObjectiveTerms(tv * config.tv_weight + loss, tv, loss)


def objective(patches, frames, config, detector, transforms=None):
    """
    alpha * sum of patch total variations + batch mean of the loss.

    :rtype: :class:`~dynapatch.tensor.Tensor`
    """
    return objective_terms(patches, frames, config, detector,
                           transforms).total
