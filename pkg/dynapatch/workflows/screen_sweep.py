# -*- coding: utf-8 -*-


"""
Screen size study: success rate of a single static patch as function of
the back screen's share of the back face area.
"""


import collections
import csv
import logging

from dynapatch.attack.crafting import craft_patches
from dynapatch.evaluation.metrics import attack_success_rate
from dynapatch.scenegen.dataset import generate_dataset


logger = logging.getLogger(__name__)


SweepRow = collections.namedtuple('SweepRow', [
    'ratio', 'success_rate', 'frames'])
SweepRow.__doc__ = """
Success rate (percent) of the patch crafted for one screen area ratio and
the number of evaluated frames
"""


def screen_size_sweep(spec, ratios, config, detector, seed=0, crafter=None):
    """
    Craft and evaluate one back screen patch per screen area ratio.

    For every ratio train and test splits are rendered with a resized back
    screen, a single patch is crafted on the train split with the obj_cls
    loss and evaluated on the test split. Ratio 0 removes the screen and
    yields the clean baseline.

    :param spec: scene parameters
    :type spec: :class:`~dynapatch.scenegen.scene.SceneSpec`
    :param ratios: screen area / back face area ratios in [0, 1]
    :type ratios: `list`
    :param config: attack configuration (the loss kind is replaced by
        obj_cls)
    :type config: :class:`~dynapatch.attack.config.AttackConfig`
    :param detector: the attacked detector
    :param seed: dataset seed
    :rtype: `list` of :class:`SweepRow`
    :raises ScreenSizeError: if a ratio exceeds 1 or is not achievable
    """
    crafter = crafter or craft_patches
    config = config.copy(loss_kind='obj_cls')
    # validate all ratios before the first (expensive) crafting run
    specs = [spec.with_back_screen_ratio(float(r)) for r in ratios]
    rows = []
    for index, (ratio, sized) in enumerate(zip(ratios, specs)):
        test = generate_dataset(sized, 'test', seed)
        patches = []
        if sized.screen_slots:
            train = [f for f in generate_dataset(sized, 'train', seed)
                     if f.screens]
            result = crafter(train, 1, config, detector, stream=(index,))
            patches = list(getattr(result, 'patches', result))
        report = attack_success_rate(test, patches, detector,
                                     config.target_class, label='sweep')
        rows.append(SweepRow(float(ratio), report.success_rate,
                             report.frame_count))
        logger.info("screen ratio {:.3f}: success rate {:.2f}%".format(
            ratio, report.success_rate))
    return rows


def write_sweep_csv(rows, path):
    with open(path, 'w', newline='') as sweep_file:
        writer = csv.writer(sweep_file, lineterminator='\n')
        writer.writerow(SweepRow._fields)
        for row in rows:
            writer.writerow([repr(row.ratio), repr(row.success_rate),
                             row.frames])
    return path
