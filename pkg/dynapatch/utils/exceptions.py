# -*- coding: utf-8 -*-


"""
Custom exceptions
"""


class DynapatchError(Exception):
    """Common base of all exceptions raised by the package."""
    pass


class TensorError(DynapatchError):
    """Exception raised while building or differentiating a graph."""
    pass


class DetectorConfigError(DynapatchError):
    """Exception raised by the DetectorConfig class."""
    pass


class DetectorWeightsError(DynapatchError):
    """Exception raised when reading or writing detector weight files."""
    pass


class SceneSpecError(DynapatchError):
    """Exception raised by the SceneSpec class."""
    pass


class ProjectionError(DynapatchError):
    """Exception raised if a scene point cannot be projected."""
    pass


class DatasetError(DynapatchError):
    """Exception raised while generating or storing a dataset."""
    pass


class FrameParserError(DynapatchError):
    """Exception raised by the FrameParser class."""
    pass


class HomographyError(DynapatchError):
    """Exception raised by the Homography class."""
    pass


class PlacementError(DynapatchError):
    """Exception raised while compositing patches onto frames."""
    pass


class PatchFileError(DynapatchError):
    """Exception raised when reading or writing patch files."""
    pass


class AttackConfigError(DynapatchError):
    """Exception raised by the AttackConfig class."""
    pass


class SplitPlanError(DynapatchError):
    """Exception raised by the SplitPlan class and the split search."""
    pass


class EvaluationError(DynapatchError):
    """Exception raised during attack evaluation."""
    pass


class ScreenSizeError(DynapatchError):
    """Exception raised if a screen/face area ratio cannot be realized."""
    pass


class RunConfigError(DynapatchError):
    """Exception raised by the RunConfig class."""
    pass


class CommandLineError(DynapatchError):
    """Exception raised by CLI commands."""
    pass
