# -*- coding: utf-8 -*-

from .report import EvalReport, FrameRecord
from .metrics import attack_success_rate, semantic_success_rate
from .heatmaps import HeatMap, objectness_heatmap, class_map
from .transfer import cross_model_eval, cross_object_eval

__all__ = ["EvalReport", "FrameRecord", "attack_success_rate",
           "semantic_success_rate", "HeatMap", "objectness_heatmap",
           "class_map", "cross_model_eval", "cross_object_eval"]
