# -*- coding: utf-8 -*-


"""
Attack losses on raw grid output and the total variation of patches.

All detector losses reduce over every S x S x B slot with a max, the
gradient hence flows through a single slot per loss.
"""


from dynapatch.tensor import as_tensor
from dynapatch.tensor import functional as F
from dynapatch.utils.defaults import AttackDefaults
from dynapatch.utils.exceptions import AttackConfigError


def _check_class(raw, class_id):
    num_classes = raw.shape[-1] - 5
    if not 0 <= class_id < num_classes:
        raise AttackConfigError("class id {} is out of range for {} classes"
                                .format(class_id, num_classes))


def class_probability(raw, class_id):
    """
    Softmax probability of a class for every slot, shape (S, S, B).
    """
    raw = as_tensor(raw)
    _check_class(raw, class_id)
    return F.softmax(raw[..., 5:], axis=-1)[..., class_id]


def objectness(raw):
    """
    Objectness score of every slot, shape (S, S, B).
    """
    return F.sigmoid(as_tensor(raw)[..., 4])


def cls_loss(raw, class_id):
    """
    Maximum probability of class `class_id` over all slots.
    """
    return class_probability(raw, class_id).max()


def obj_loss(raw):
    """
    Maximum objectness over all slots.
    """
    return objectness(raw).max()


def obj_cls_loss(raw, class_id):
    """
    Maximum over all slots of objectness times class probability.
    """
    raw = as_tensor(raw)
    return (objectness(raw) * class_probability(raw, class_id)).max()


def detector_loss(raw, kind, class_id=None):
    """
    Evaluate one of the single-class losses by name.
    """
    if kind == 'obj':
        return obj_loss(raw)
    if kind == 'cls':
        return cls_loss(raw, class_id)
    if kind == 'obj_cls':
        return obj_cls_loss(raw, class_id)
    raise AttackConfigError("unknown loss kind '{}' (valid kinds: {})".format(
        kind, ", ".join(AttackDefaults.LOSS_KINDS)))


def semantic_loss(raw, class_ids, base='obj_cls'):
    """
    Sum of the base loss over a set of classes, every class taking its own
    maximum over the slots.
    """
    if base not in AttackDefaults.SEMANTIC_BASE_KINDS:
        raise AttackConfigError("invalid semantic base loss '{}' (valid: "
                                "{})".format(base, ", ".join(
                                    AttackDefaults.SEMANTIC_BASE_KINDS)))
    if not class_ids:
        raise AttackConfigError("semantic loss requires a non-empty class "
                                "set")
    return F.total([detector_loss(raw, base, c) for c in class_ids])


def total_variation(patch, epsilon=None):
    """
    Mean over channels, i in [0, h-2] and j in [0, w-2] of
    sqrt((p[i, j] - p[i+1, j])^2 + (p[i, j] - p[i, j+1])^2 + epsilon).

    The mean keeps the term in [0, sqrt(2)] for pixels in [0, 1] whatever
    the patch size, on the scale of the detector losses. Patches with a
    single row or column have no terms and zero variation.

    :param patch: patch or its pixel tensor of shape (3, h, w)
    :rtype: :class:`~dynapatch.tensor.Tensor`
    """
    epsilon = AttackDefaults.TV_EPSILON if epsilon is None else epsilon
    pixels = as_tensor(getattr(patch, 'pixels', patch))
    height, width = pixels.shape[-2:]
    if height < 2 or width < 2:
        return F.constant(0.0)
    anchor = pixels[..., :height - 1, :width - 1]
    down = anchor - pixels[..., 1:, :width - 1]
    right = anchor - pixels[..., :height - 1, 1:]
    return F.sqrt(down * down + right * right + epsilon).mean()
