# -*- coding: utf-8 -*-


"""
Transferability of crafted patches to other detectors and to other
target variants.
"""


from dynapatch.evaluation.metrics import attack_success_rate
from dynapatch.scenegen.dataset import generate_dataset


def cross_model_eval(frames, patches_or_plan, other_detector, target_class):
    """
    Evaluate patches crafted against one detector on another one.

    :param other_detector: independently trained detector
    :type other_detector: :class:`~dynapatch.detector.network.Detector`
    :rtype: :class:`~dynapatch.evaluation.report.EvalReport`
    """
    return attack_success_rate(frames, patches_or_plan, other_detector,
                               target_class, label='transfer')


def cross_object_eval(spec, variant, patches_or_plan, detector, target_class,
                      seed):
    """
    Evaluate patches on the test split rendered for another target variant
    carrying the same screens.

    :param spec: scene the patches were crafted on
    :type spec: :class:`~dynapatch.scenegen.scene.SceneSpec`
    :param variant: name of the target variant
    :type variant: `str`
    :param seed: dataset seed of the rendered test split
    :rtype: :class:`~dynapatch.evaluation.report.EvalReport`
    :raises SceneSpecError: if the screens do not fit onto the variant
    """
    frames = generate_dataset(spec.variant_spec(variant), 'test', seed)
    return attack_success_rate(frames, patches_or_plan, detector,
                               target_class, label='transfer-object')
