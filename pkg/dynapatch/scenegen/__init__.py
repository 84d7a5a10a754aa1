# -*- coding: utf-8 -*-

from .scene import SceneSpec, ScreenSlot
from .camera import Camera
from .renderer import render_frame, FrameJitter
from .dataset import generate_dataset, write_dataset

__all__ = ["SceneSpec", "ScreenSlot", "Camera", "render_frame",
           "FrameJitter", "generate_dataset", "write_dataset"]
