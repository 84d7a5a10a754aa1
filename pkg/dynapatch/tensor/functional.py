# -*- coding: utf-8 -*-


"""
Differentiable operations on :class:`~dynapatch.tensor.tensor.Tensor`.

Every operation computes its forward values with numpy and registers the
matching backward rule. Binary operations accept operands of identical
shape or a scalar (0-dimensional tensor or plain number) on either side.
"""


import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from dynapatch.tensor.tensor import Tensor, as_tensor, make_node
from dynapatch.utils.defaults import DetectorDefaults
from dynapatch.utils.exceptions import TensorError


ELEMENTWISE_KINDS = ('add', 'sub', 'mul', 'div', 'neg', 'sqrt', 'clamp',
                     'exp', 'log')
REDUCE_KINDS = ('sum', 'max', 'mean')
ACTIVATION_KINDS = ('leaky_relu', 'sigmoid', 'softmax', 'log_softmax')


def _binary_operands(a, b, op):
    a, b = as_tensor(a), as_tensor(b)
    if a.shape != b.shape and a.ndim != 0 and b.ndim != 0:
        raise TensorError("shape mismatch in '{}': {} vs. {} (only equal "
                          "shapes or scalar operands are supported)"
                          .format(op, a.shape, b.shape))
    return a, b


def _unbroadcast(gradient, shape):
    # scalar operands receive the sum over the broadcast gradient
    if shape == () and gradient.shape != ():
        return np.sum(gradient)
    return gradient


def add(a, b):
    a, b = _binary_operands(a, b, 'add')

    def backward_fn(g):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)
    return make_node(a.values + b.values, (a, b), backward_fn, 'add')


def sub(a, b):
    a, b = _binary_operands(a, b, 'sub')

    def backward_fn(g):
        return _unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)
    return make_node(a.values - b.values, (a, b), backward_fn, 'sub')


def mul(a, b):
    a, b = _binary_operands(a, b, 'mul')

    def backward_fn(g):
        return (_unbroadcast(g * b.values, a.shape),
                _unbroadcast(g * a.values, b.shape))
    return make_node(a.values * b.values, (a, b), backward_fn, 'mul')


def div(a, b):
    a, b = _binary_operands(a, b, 'div')

    def backward_fn(g):
        return (_unbroadcast(g / b.values, a.shape),
                _unbroadcast(-g * a.values / (b.values * b.values),
                             b.shape))
    return make_node(a.values / b.values, (a, b), backward_fn, 'div')


def neg(a):
    a = as_tensor(a)
    return make_node(-a.values, (a,), lambda g: (-g,), 'neg')


def sqrt(a):
    a = as_tensor(a)
    values = np.sqrt(a.values)
    return make_node(values, (a,), lambda g: (g / (2.0 * values),), 'sqrt')


def clamp(a, low, high):
    """
    Clip values to [low, high]; the gradient passes where low <= a <= high.
    """
    a = as_tensor(a)
    if low > high:
        raise TensorError("invalid clamp bounds [{}, {}]".format(low, high))
    inside = (a.values >= low) & (a.values <= high)
    values = np.clip(a.values, low, high)
    return make_node(values, (a,), lambda g: (g * inside,), 'clamp')


def exp(a):
    a = as_tensor(a)
    values = np.exp(a.values)
    return make_node(values, (a,), lambda g: (g * values,), 'exp')


def log(a):
    a = as_tensor(a)
    return make_node(np.log(a.values), (a,), lambda g: (g / a.values,),
                     'log')


def elementwise(kind, a, b=None, low=None, high=None):
    """
    Dispatch an elementwise operation by name.

    :param kind: one of add, sub, mul, div, neg, sqrt, clamp, exp or log
    :type kind: `str`
    :param b: second operand of the binary kinds
    :param low: lower bound (clamp only)
    :param high: upper bound (clamp only)
    """
    if kind in ('add', 'sub', 'mul', 'div'):
        if b is None:
            raise TensorError("operation '{}' requires two operands"
                              .format(kind))
        return {'add': add, 'sub': sub, 'mul': mul, 'div': div}[kind](a, b)
    if kind == 'clamp':
        return clamp(a, low, high)
    if kind in ('neg', 'sqrt', 'exp', 'log'):
        return {'neg': neg, 'sqrt': sqrt, 'exp': exp, 'log': log}[kind](a)
    raise TensorError("unknown elementwise operation '{}' (valid: {})"
                      .format(kind, ", ".join(ELEMENTWISE_KINDS)))


def conv2d(x, kernel, stride=1, padding=0, bias=None):
    """
    2D cross-correlation of a single image with a kernel bank.

    :param x: input of shape (Cin, H, W)
    :type x: :class:`Tensor`
    :param kernel: kernels of shape (Cout, Cin, k, k)
    :type kernel: :class:`Tensor`
    :param stride: step between neighbouring output positions
    :type stride: `int`
    :param padding: zero padding added on every border
    :type padding: `int`
    :param bias: optional per-output-channel offset of shape (Cout,)
    :type bias: :class:`Tensor`
    :returns: output of shape (Cout, H', W') with
        H' = floor((H + 2 padding - k) / stride) + 1
    :raises TensorError: for inconsistent shapes or invalid geometry
    """
    x, kernel = as_tensor(x), as_tensor(kernel)
    if x.ndim != 3 or kernel.ndim != 4:
        raise TensorError("conv2d expects a (Cin, H, W) input and a "
                          "(Cout, Cin, k, k) kernel but got {} and {}"
                          .format(x.shape, kernel.shape))
    cout, cin, k, kw = kernel.shape
    if kw != k:
        raise TensorError("only square kernels are supported (got {}x{})"
                          .format(k, kw))
    if cin != x.shape[0]:
        raise TensorError("kernel expects {} input channels but the input "
                          "has {}".format(cin, x.shape[0]))
    if stride < 1 or padding < 0:
        raise TensorError("invalid stride {} / padding {}"
                          .format(stride, padding))
    height, width = x.shape[1:]
    if k > height + 2 * padding or k > width + 2 * padding:
        raise TensorError("kernel size {} exceeds padded input {}x{}"
                          .format(k, height + 2 * padding,
                                  width + 2 * padding))
    if bias is not None:
        bias = as_tensor(bias)
        if bias.shape != (cout,):
            raise TensorError("bias must have shape ({},) but got {}"
                              .format(cout, bias.shape))
    padded = np.pad(x.values, ((0, 0), (padding, padding),
                               (padding, padding)))
    out_h = (padded.shape[1] - k) // stride + 1
    out_w = (padded.shape[2] - k) // stride + 1
    windows = sliding_window_view(padded, (k, k), axis=(1, 2))
    windows = windows[:, ::stride, ::stride][:, :out_h, :out_w]
    columns = windows.transpose(0, 3, 4, 1, 2).reshape(cin * k * k,
                                                       out_h * out_w)
    flat_kernel = kernel.values.reshape(cout, -1)
    values = (flat_kernel @ columns).reshape(cout, out_h, out_w)
    if bias is not None:
        values = values + bias.values[:, None, None]

    def backward_fn(g):
        flat_g = g.reshape(cout, -1)
        grad_x = grad_kernel = grad_bias = None
        if x.requires_grad:
            grad_columns = (flat_kernel.T @ flat_g).reshape(cin, k, k, out_h,
                                                            out_w)
            grad_padded = np.zeros_like(padded)
            span_h = stride * (out_h - 1) + 1
            span_w = stride * (out_w - 1) + 1
            for i in range(k):
                for j in range(k):
                    grad_padded[:, i:i + span_h:stride,
                                j:j + span_w:stride] += grad_columns[:, i, j]
            grad_x = grad_padded[:, padding:padding + height,
                                 padding:padding + width]
        if kernel.requires_grad:
            grad_kernel = (flat_g @ columns.T).reshape(kernel.shape)
        if bias is not None and bias.requires_grad:
            grad_bias = g.sum(axis=(1, 2))
        return grad_x, grad_kernel, grad_bias

    parents = (x, kernel) if bias is None else (x, kernel, bias)
    return make_node(values, parents, backward_fn, 'conv2d')


def _normalize_axes(t, axes):
    if axes is None:
        return tuple(range(t.ndim))
    if isinstance(axes, int):
        axes = (axes,)
    normalized = []
    for axis in axes:
        if not -t.ndim <= axis < t.ndim:
            raise TensorError("invalid axis {} for tensor of shape {}"
                              .format(axis, t.shape))
        normalized.append(axis % t.ndim)
    if len(set(normalized)) != len(normalized):
        raise TensorError("duplicate reduction axes {}".format(axes))
    return tuple(sorted(normalized))


def reduce(kind, t, axes=None):
    """
    Reduce a tensor along the given axes (all axes if `None`).

    The max reduction routes the gradient to a single element per reduced
    group: the maximum with the lowest flat index inside the group.

    :param kind: one of sum, max or mean
    :type kind: `str`
    :raises TensorError: for unknown kinds, invalid axes or empty groups
    """
    t = as_tensor(t)
    if kind not in REDUCE_KINDS:
        raise TensorError("unknown reduction '{}' (valid: {})"
                          .format(kind, ", ".join(REDUCE_KINDS)))
    axes = _normalize_axes(t, axes)
    kept = tuple(axis for axis in range(t.ndim) if axis not in axes)
    kept_shape = tuple(t.shape[axis] for axis in kept)
    group_size = int(np.prod([t.shape[axis] for axis in axes]))
    if group_size == 0 or t.size == 0:
        raise TensorError("empty reduction over axes {} of shape {}"
                          .format(axes, t.shape))
    # shape of the reduced values with singleton axes retained
    keep_dims = tuple(1 if axis in axes else extent
                      for axis, extent in enumerate(t.shape))

    if kind in ('sum', 'mean'):
        scale = 1.0 if kind == 'sum' else 1.0 / group_size
        values = np.sum(t.values, axis=axes) * scale

        def backward_fn(g):
            expanded = np.reshape(g, keep_dims) * scale
            return (np.broadcast_to(expanded, t.shape).copy(),)
        return make_node(values, (t,), backward_fn, kind)

    permutation = kept + axes
    grouped = t.values.transpose(permutation).reshape(kept_shape +
                                                      (group_size,))
    argmax = np.argmax(grouped, axis=-1)
    values = np.take_along_axis(grouped, argmax[..., None], axis=-1)[..., 0]

    def backward_fn(g):
        grad_grouped = np.zeros_like(grouped)
        np.put_along_axis(grad_grouped, argmax[..., None],
                          np.reshape(g, kept_shape)[..., None], axis=-1)
        moved_shape = tuple(t.shape[axis] for axis in permutation)
        grad_moved = grad_grouped.reshape(moved_shape)
        return (grad_moved.transpose(np.argsort(permutation)),)
    return make_node(values, (t,), backward_fn, 'max')


def sigmoid(t):
    t = as_tensor(t)
    values = 0.5 * (1.0 + np.tanh(0.5 * t.values))
    return make_node(values, (t,), lambda g: (g * values * (1.0 - values),),
                     'sigmoid')


def leaky_relu(t, slope=None):
    t = as_tensor(t)
    slope = DetectorDefaults.LEAKY_SLOPE if slope is None else slope
    positive = t.values > 0.0
    values = np.where(positive, t.values, slope * t.values)
    return make_node(values, (t,),
                     lambda g: (np.where(positive, g, slope * g),),
                     'leaky_relu')


def softmax(t, axis):
    t = as_tensor(t)
    shifted = t.values - np.max(t.values, axis=axis, keepdims=True)
    exponentials = np.exp(shifted)
    values = exponentials / np.sum(exponentials, axis=axis, keepdims=True)

    def backward_fn(g):
        inner = np.sum(g * values, axis=axis, keepdims=True)
        return (values * (g - inner),)
    return make_node(values, (t,), backward_fn, 'softmax')


def log_softmax(t, axis):
    t = as_tensor(t)
    shifted = t.values - np.max(t.values, axis=axis, keepdims=True)
    log_norm = np.log(np.sum(np.exp(shifted), axis=axis, keepdims=True))
    values = shifted - log_norm
    probabilities = np.exp(values)

    def backward_fn(g):
        return (g - probabilities * np.sum(g, axis=axis, keepdims=True),)
    return make_node(values, (t,), backward_fn, 'log_softmax')


def activations(kind, t, axis=None):
    """
    Apply an activation function by name.

    :param kind: one of leaky_relu (slope 0.1), sigmoid, softmax or
        log_softmax
    :type kind: `str`
    :param axis: normalization axis (required by softmax and log_softmax)
    :type axis: `int`
    """
    if kind == 'leaky_relu':
        return leaky_relu(t)
    if kind == 'sigmoid':
        return sigmoid(t)
    if kind in ('softmax', 'log_softmax'):
        if axis is None:
            raise TensorError("'{}' requires an axis".format(kind))
        return softmax(t, axis) if kind == 'softmax' else log_softmax(t, axis)
    raise TensorError("unknown activation '{}' (valid: {})"
                      .format(kind, ", ".join(ACTIVATION_KINDS)))


def reshape(t, shape):
    t = as_tensor(t)
    try:
        values = t.values.reshape(shape)
    except ValueError as exception:
        raise TensorError("cannot reshape {} to {}: {}"
                          .format(t.shape, shape, exception))
    return make_node(values, (t,), lambda g: (np.reshape(g, t.shape),),
                     'reshape')


def transpose(t, axes=None):
    t = as_tensor(t)
    axes = tuple(reversed(range(t.ndim))) if not axes else tuple(axes)
    if sorted(axes) != list(range(t.ndim)):
        raise TensorError("invalid permutation {} for shape {}"
                          .format(axes, t.shape))
    inverse = tuple(np.argsort(axes))
    return make_node(t.values.transpose(axes), (t,),
                     lambda g: (np.transpose(g, inverse),), 'transpose')


def getitem(t, index):
    t = as_tensor(t)
    values = t.values[index]

    parts = index if isinstance(index, tuple) else (index,)
    advanced = any(isinstance(part, (list, np.ndarray)) for part in parts)

    def backward_fn(g):
        grad = np.zeros_like(t.values)
        if advanced:
            # repeated indices have to accumulate
            np.add.at(grad, index, g)
        else:
            grad[index] += g
        return (grad,)
    return make_node(values, (t,), backward_fn, 'getitem')


def take_weighted(t, indices, weights):
    """
    Weighted gather: out[n] = sum_j weights[n, j] * t.flat[indices[n, j]].

    :param indices: integer array of shape (N, J) indexing the flattened
        tensor
    :type indices: `numpy.ndarray`
    :param weights: constant weights of shape (N, J)
    :type weights: `numpy.ndarray`
    """
    t = as_tensor(t)
    indices = np.asarray(indices, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.float64)
    if indices.shape != weights.shape or indices.ndim != 2:
        raise TensorError("indices {} and weights {} must share a 2D shape"
                          .format(indices.shape, weights.shape))
    if indices.size and (indices.min() < 0 or indices.max() >= t.size):
        raise TensorError("gather index out of range for {} elements"
                          .format(t.size))
    flat = t.values.reshape(-1)
    values = np.sum(flat[indices] * weights, axis=1)

    def backward_fn(g):
        grad = np.zeros(t.size)
        np.add.at(grad, indices.reshape(-1),
                  (g[:, None] * weights).reshape(-1))
        return (grad.reshape(t.shape),)
    return make_node(values, (t,), backward_fn, 'take_weighted')


def scatter_replace(base, positions, values):
    """
    Copy of base with the flat positions replaced by values.

    :param positions: unique flat indices into base
    :type positions: `numpy.ndarray`
    :param values: replacement values of shape (len(positions),)
    :type values: :class:`Tensor`
    """
    base, values = as_tensor(base), as_tensor(values)
    positions = np.asarray(positions, dtype=np.int64)
    if values.shape != positions.shape or positions.ndim != 1:
        raise TensorError("{} values cannot replace {} positions"
                          .format(values.shape, positions.shape))
    if np.unique(positions).size != positions.size:
        raise TensorError("scatter positions must be unique")
    out = base.values.copy().reshape(-1)
    out[positions] = values.values

    def backward_fn(g):
        flat_g = g.reshape(-1)
        grad_base = flat_g.copy()
        grad_base[positions] = 0.0
        return grad_base.reshape(base.shape), flat_g[positions].copy()
    return make_node(out.reshape(base.shape), (base, values), backward_fn,
                     'scatter_replace')


def total(tensors):
    """
    Sum a non-empty sequence of equally shaped tensors.
    """
    tensors = list(tensors)
    if not tensors:
        raise TensorError("cannot sum an empty sequence of tensors")
    result = tensors[0]
    for tensor in tensors[1:]:
        result = add(result, tensor)
    return result


def constant(values):
    return Tensor(values)
