# -*- coding: utf-8 -*-

from .tensor import Tensor, Graph, backward, as_tensor
from .optim import Adam

__all__ = ["Tensor", "Graph", "backward", "as_tensor", "Adam"]
