# -*- coding: utf-8 -*-

from .config import DetectorConfig
from .network import Detector
from .postprocess import Detection, decode, nms, detect
from .training import TrainingConfig, TrainingResult, train_detector
from .weights import read_weights, write_weights

__all__ = ["DetectorConfig", "Detector", "Detection", "decode", "nms",
           "detect", "TrainingConfig", "TrainingResult", "train_detector",
           "read_weights", "write_weights"]
