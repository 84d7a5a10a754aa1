# -*- coding: utf-8 -*-


"""
Central finite-difference verification of analytic gradients.
"""


import numpy as np

from dynapatch.utils.exceptions import TensorError


def numerical_gradient(function, leaf, indices=None, step=1.0E-5):
    """
    Central finite-difference estimate of d function() / d leaf.

    :param function: callable without arguments rebuilding the scalar
        output from the current leaf values
    :type function: `callable`
    :param leaf: tensor whose values are perturbed in place
    :type leaf: :class:`~dynapatch.tensor.tensor.Tensor`
    :param indices: flat indices to check (all elements if `None`)
    :type indices: `list`
    :param step: finite-difference step h
    :type step: `float`
    :returns: estimates for the checked indices
    :rtype: `numpy.ndarray`
    """
    flat = leaf.values.reshape(-1)
    if indices is None:
        indices = range(flat.size)
    estimates = []
    for index in indices:
        original = flat[index]
        flat[index] = original + step
        upper = function().item()
        flat[index] = original - step
        lower = function().item()
        flat[index] = original
        estimates.append((upper - lower) / (2.0 * step))
    return np.array(estimates)


def relative_errors(analytic, numeric, floor=1.0E-6):
    """
    Elementwise relative error |a - n| / max(|a|, |n|), restricted to
    entries where either magnitude exceeds floor (absolute error elsewhere).
    """
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    scale = np.maximum(np.abs(analytic), np.abs(numeric))
    difference = np.abs(analytic - numeric)
    return np.where(scale > floor, difference / np.where(scale > floor,
                                                        scale, 1.0),
                    difference)


def check_gradient(function, leaves, indices=None, step=1.0E-5,
                   tolerance=1.0E-4):
    """
    Compare backward() gradients against central finite differences.

    :param function: callable rebuilding the scalar output
    :param leaves: leaf tensors requiring gradients
    :type leaves: `list`
    :param indices: optional mapping leaf position -> flat indices to check
    :type indices: `dict`
    :returns: largest relative error over all checked entries
    :rtype: `float`
    :raises TensorError: if the largest error exceeds tolerance
    """
    for leaf in leaves:
        leaf.zero_grad()
    root = function()
    root.backward()
    worst = 0.0
    for position, leaf in enumerate(leaves):
        checked = None if indices is None else indices.get(position)
        analytic = leaf.grad.reshape(-1).copy()
        if checked is not None:
            analytic = analytic[list(checked)]
        numeric = numerical_gradient(function, leaf, checked, step)
        if analytic.size:
            worst = max(worst, float(np.max(relative_errors(analytic,
                                                            numeric))))
    if worst >= tolerance:
        raise TensorError("gradient check failed: relative error {:.3e} "
                          "exceeds {:.1e}".format(worst, tolerance))
    return worst
