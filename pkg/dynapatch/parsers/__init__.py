# -*- coding: utf-8 -*-

from .frame_parser import SidecarParser, read_frame, read_split

__all__ = ["SidecarParser", "read_frame", "read_split"]
