# -*- coding: utf-8 -*-


from .frame import Frame, Truth
from .patch import Patch
from .plan import SplitPlan


__all__ = ["Frame", "Truth", "Patch", "SplitPlan"]
