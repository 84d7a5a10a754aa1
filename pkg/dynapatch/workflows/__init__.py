# -*- coding: utf-8 -*-

from dynapatch.workflows.dynamic_split import (DynamicSplitSearch,
                                               dynamic_split_search)
from dynapatch.workflows.screen_sweep import SweepRow, screen_size_sweep

__all__ = ["DynamicSplitSearch", "dynamic_split_search", "SweepRow",
           "screen_size_sweep"]
