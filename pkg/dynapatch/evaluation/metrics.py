# -*- coding: utf-8 -*-


"""
Attack success metrics.

Patches are composited without random transformations and every patched
frame runs through the full detection pipeline (forward, decode, nms). A
frame counts as success if no surviving detection carries one of the
suppressed class ids.
"""


import logging

from dynapatch.data.plan import SplitPlan
from dynapatch.detector.postprocess import detect
from dynapatch.evaluation.report import EvalReport, FrameRecord
from dynapatch.placement.compositing import place_all
from dynapatch.utils.exceptions import EvaluationError


logger = logging.getLogger(__name__)


def _loss_kind(patches_or_plan):
    if isinstance(patches_or_plan, SplitPlan):
        kinds = sorted(set(k for k in patches_or_plan.loss_kinds if k))
        return "+".join(kinds) or None
    kinds = sorted(set(p.loss_kind for p in patches_or_plan or []
                       if p.loss_kind))
    return "+".join(kinds) or None


def select_patches(patches_or_plan, angle):
    """
    Patch set shown at a view angle.

    :returns: (bin index or None, detached patches)
    :raises SplitPlanError: if the angle lies outside the plan range
    """
    if patches_or_plan is None:
        return None, []
    if isinstance(patches_or_plan, SplitPlan):
        index = patches_or_plan.bin_index(angle)
        patches = patches_or_plan.patch_sets[index]
    else:
        index, patches = None, patches_or_plan
    return index, [p.detach() for p in patches]


def evaluate_frames(frames, patches_or_plan, detector, class_ids, label):
    """
    Evaluate patches (or a plan, or None for clean frames) on frames.

    :param frames: evaluation frames
    :type frames: `list` of :class:`~dynapatch.data.frame.Frame`
    :param patches_or_plan: patches shown on every frame, a plan switching
        patch sets by view angle or None
    :param detector: the evaluated detector
    :param class_ids: class ids whose detection fails a frame
    :param label: report label
    :rtype: :class:`~dynapatch.evaluation.report.EvalReport`
    :raises EvaluationError: if no frames are given
    """
    class_ids = set(int(c) for c in class_ids)
    if not class_ids:
        raise EvaluationError("evaluation requires a non-empty class set")
    if not frames:
        raise EvaluationError("cannot evaluate an empty frame list")
    records = []
    for frame in frames:
        index, patches = select_patches(patches_or_plan, frame.angle)
        image = place_all(frame, patches)
        detected = tuple(sorted(set(d.class_id
                                    for d in detect(detector, image))))
        success = not class_ids.intersection(detected)
        records.append(FrameRecord(frame.name, frame.angle, index, detected,
                                   success))
        logger.debug("frame {} (angle {:.3f}): detections {}, success {}"
                     .format(frame.name, frame.angle, list(detected),
                             success))
    boundaries = (patches_or_plan.boundaries
                  if isinstance(patches_or_plan, SplitPlan) else None)
    report = EvalReport(records, label, sorted(class_ids),
                        loss_kind=_loss_kind(patches_or_plan),
                        boundaries=boundaries)
    logger.info("{} evaluation on {} frames: success rate {:.2f}%".format(
        label, report.frame_count, report.success_rate))
    return report


def attack_success_rate(frames, patches_or_plan, detector, target_class,
                        label='white-box'):
    """
    Percentage of frames in which the target class is not detected.

    :rtype: :class:`~dynapatch.evaluation.report.EvalReport`
    """
    return evaluate_frames(frames, patches_or_plan, detector, [target_class],
                           label)


def semantic_success_rate(frames, patches_or_plan, detector, class_ids,
                          label='semantic'):
    """
    Percentage of frames in which none of the given classes is detected.

    :rtype: :class:`~dynapatch.evaluation.report.EvalReport`
    """
    return evaluate_frames(frames, patches_or_plan, detector, class_ids,
                           label)
