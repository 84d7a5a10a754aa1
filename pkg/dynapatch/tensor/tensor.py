# -*- coding: utf-8 -*-


"""
Minimal reverse-mode automatic differentiation over dense float64 arrays.

Every :class:`Tensor` produced by an operation remembers its parents and a
backward rule mapping the output gradient to the parent gradients. Calling
:func:`backward` on a scalar root traverses the recorded graph in reverse
topological order and accumulates gradients into the leaf tensors.
"""


import itertools

import numpy as np

from dynapatch.utils.exceptions import TensorError


# node identities increase monotonically, hence every node is created
# after all of its inputs
_NODE_IDS = itertools.count()


class Tensor(object):
    """
    Dense n-dimensional value with an optional gradient buffer.

    :param values: array-like contents (converted to float64)
    :type values: `numpy.ndarray`, `list` or `float`
    :param requires_grad: whether gradients should be accumulated into this
        tensor (leaves) or propagated through it (intermediates)
    :type requires_grad: `bool`
    """

    def __init__(self, values, requires_grad=False, parents=(),
                 backward_fn=None, op=None):
        self.values = np.array(values, dtype=np.float64)
        self.requires_grad = bool(requires_grad)
        self.parents = tuple(parents)
        self.backward_fn = backward_fn
        self.op = op
        self.node_id = next(_NODE_IDS)
        self._grad = None

    def __repr__(self):
        return "Tensor(shape={}, op={}, requires_grad={})".format(
            self.shape, self.op or 'leaf', self.requires_grad)

    @property
    def shape(self):
        return self.values.shape

    @property
    def size(self):
        return self.values.size

    @property
    def ndim(self):
        return self.values.ndim

    @property
    def is_leaf(self):
        return not self.parents

    @property
    def grad(self):
        """
        Accumulated gradient (zeros if nothing was accumulated yet).
        """
        if self._grad is None:
            return np.zeros_like(self.values)
        return self._grad

    def zero_grad(self):
        self._grad = None

    def accumulate_grad(self, gradient):
        if self._grad is None:
            self._grad = np.array(gradient, dtype=np.float64)
        else:
            self._grad += gradient

    def item(self):
        if self.size != 1:
            raise TensorError("item() requires a single-element tensor but "
                              "got shape {}".format(self.shape))
        return float(self.values.reshape(-1)[0])

    def numpy(self):
        return self.values

    def detach(self):
        return Tensor(self.values.copy())

    def backward(self):
        backward(self)

    # arithmetic is delegated to the functional module which registers
    # the corresponding backward rules
    def __add__(self, other):
        from dynapatch.tensor import functional
        return functional.add(self, other)

    def __radd__(self, other):
        from dynapatch.tensor import functional
        return functional.add(self, other)

    def __sub__(self, other):
        from dynapatch.tensor import functional
        return functional.sub(self, other)

    def __rsub__(self, other):
        from dynapatch.tensor import functional
        return functional.add(functional.neg(self), other)

    def __mul__(self, other):
        from dynapatch.tensor import functional
        return functional.mul(self, other)

    def __rmul__(self, other):
        from dynapatch.tensor import functional
        return functional.mul(self, other)

    def __truediv__(self, other):
        from dynapatch.tensor import functional
        return functional.div(self, other)

    def __neg__(self):
        from dynapatch.tensor import functional
        return functional.neg(self)

    def __getitem__(self, index):
        from dynapatch.tensor import functional
        return functional.getitem(self, index)

    def reshape(self, *shape):
        from dynapatch.tensor import functional
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return functional.reshape(self, shape)

    def transpose(self, *axes):
        from dynapatch.tensor import functional
        if len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        return functional.transpose(self, axes)

    def sum(self, axes=None):
        from dynapatch.tensor import functional
        return functional.reduce('sum', self, axes)

    def max(self, axes=None):
        from dynapatch.tensor import functional
        return functional.reduce('max', self, axes)

    def mean(self, axes=None):
        from dynapatch.tensor import functional
        return functional.reduce('mean', self, axes)


def as_tensor(value):
    """
    Wrap plain numbers and arrays as constant tensors.
    """
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def make_node(values, parents, backward_fn, op):
    """
    Create the output node of an operation.

    The backward rule is only recorded if at least one parent requires a
    gradient, otherwise the result is a constant.
    """
    if any(parent.requires_grad for parent in parents):
        return Tensor(values, requires_grad=True, parents=parents,
                      backward_fn=backward_fn, op=op)
    return Tensor(values, op=op)


class Graph(object):
    """
    Nodes reachable from a root, ordered such that every node's inputs
    precede it.

    :param root: output node of the computation
    :type root: :class:`Tensor`
    """

    def __init__(self, root):
        self.root = root
        self.nodes = self.collect(root)

    @staticmethod
    def collect(root):
        seen = {}
        stack = [root]
        while stack:
            node = stack.pop()
            if node.node_id in seen:
                continue
            seen[node.node_id] = node
            stack.extend(node.parents)
        # creation order is a valid topological order
        return [seen[node_id] for node_id in sorted(seen)]

    def leaves(self):
        return [node for node in self.nodes if node.is_leaf]

    def reversed(self):
        return list(reversed(self.nodes))


def backward(root):
    """
    Accumulate d(root)/d(leaf) into every reachable leaf requiring a
    gradient.

    Intermediate gradients only live for the duration of the call, hence
    repeated calls accumulate on the leaves exactly once per call.

    :param root: scalar output node
    :type root: :class:`Tensor`
    :raises TensorError: if root is not a scalar
    """
    if root.size != 1:
        raise TensorError("backward() requires a scalar root but got shape "
                          "{}".format(root.shape))
    if not root.requires_grad:
        return
    gradients = {root.node_id: np.ones_like(root.values)}
    for node in Graph(root).reversed():
        gradient = gradients.pop(node.node_id, None)
        if gradient is None:
            continue
        if node.is_leaf:
            node.accumulate_grad(gradient)
            continue
        parent_gradients = node.backward_fn(gradient)
        for parent, parent_gradient in zip(node.parents, parent_gradients):
            if parent_gradient is None or not parent.requires_grad:
                continue
            if parent.node_id in gradients:
                gradients[parent.node_id] = (gradients[parent.node_id] +
                                             parent_gradient)
            else:
                gradients[parent.node_id] = np.array(parent_gradient,
                                                     dtype=np.float64)
