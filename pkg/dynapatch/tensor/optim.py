# -*- coding: utf-8 -*-


"""
Adam optimizer operating in-place on leaf tensors.
"""


import numpy as np

from dynapatch.utils.defaults import AttackDefaults
from dynapatch.utils.exceptions import TensorError


class Adam(object):
    """
    Adaptive moment estimation for a fixed list of parameters.

    Moment buffers are kept per parameter position, the update applied
    to `Tensor.values` using the gradients accumulated by the last
    backward pass(es).

    :param parameters: leaf tensors to optimize (must require gradients)
    :type parameters: `list`
    :param learning_rate: step size
    :type learning_rate: `float`
    :param betas: decay rates of the first and second moment estimates
    :type betas: `tuple`
    :param epsilon: denominator offset
    :type epsilon: `float`
    :param bounds: optional (low, high) range every parameter is clipped to
        after each step
    :type bounds: `tuple`
    """

    def __init__(self, parameters, learning_rate=None, betas=None,
                 epsilon=None, bounds=None):
        self.parameters = list(parameters)
        for parameter in self.parameters:
            if not (parameter.is_leaf and parameter.requires_grad):
                raise TensorError("optimizer parameters must be leaf tensors "
                                  "requiring gradients (got {})"
                                  .format(parameter))
        self.learning_rate = (AttackDefaults.LEARNING_RATE
                              if learning_rate is None else learning_rate)
        self.beta1, self.beta2 = betas or AttackDefaults.ADAM_BETAS
        self.epsilon = (AttackDefaults.ADAM_EPSILON if epsilon is None
                        else epsilon)
        self.bounds = bounds
        self.first_moments = [np.zeros_like(p.values)
                              for p in self.parameters]
        self.second_moments = [np.zeros_like(p.values)
                               for p in self.parameters]
        self.steps = 0

    def zero_grad(self):
        for parameter in self.parameters:
            parameter.zero_grad()

    def step(self):
        self.steps += 1
        correction1 = 1.0 - self.beta1 ** self.steps
        correction2 = 1.0 - self.beta2 ** self.steps
        step_size = self.learning_rate / correction1
        for parameter, m, v in zip(self.parameters, self.first_moments,
                                   self.second_moments):
            gradient = parameter.grad
            m *= self.beta1
            m += (1.0 - self.beta1) * gradient
            v *= self.beta2
            v += (1.0 - self.beta2) * (gradient * gradient)
            denominator = np.sqrt(v / correction2) + self.epsilon
            parameter.values -= step_size * m / denominator
            if self.bounds is not None:
                np.clip(parameter.values, self.bounds[0], self.bounds[1],
                        out=parameter.values)
