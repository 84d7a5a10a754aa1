# -*- coding: utf-8 -*-

from .homography import Homography, solve_homography
from .transforms import (TransformParams, TransformRanges, sample_transform,
                         apply_random_transform)
from .compositing import composite_patch, place_all

__all__ = ["Homography", "solve_homography", "TransformParams",
           "TransformRanges", "sample_transform", "apply_random_transform",
           "composite_patch", "place_all"]
