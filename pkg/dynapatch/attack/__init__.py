# -*- coding: utf-8 -*-

from .config import AttackConfig
from .losses import (cls_loss, obj_loss, obj_cls_loss, semantic_loss,
                     total_variation)
from .objective import objective, objective_terms
from .crafting import CraftResult, craft_patches

__all__ = ["AttackConfig", "cls_loss", "obj_loss", "obj_cls_loss",
           "semantic_loss", "total_variation", "objective", "objective_terms",
           "CraftResult", "craft_patches"]
