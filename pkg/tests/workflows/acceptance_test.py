# -*- coding: utf-8 -*-


"""
End-to-end runs on the default configuration

The detector is trained once per module on the default scene. All tests
are skipped unless pytest is started with `--run-acceptance`.
"""


import pytest
import numpy as np


pytestmark = pytest.mark.acceptance


@pytest.fixture(scope='module')
def lab():
    """
    Default configuration, the trained default detector and the rendered
    train and test splits.
    """
    from dynapatch.detector.network import Detector
    from dynapatch.detector.training import train_detector
    from dynapatch.scenegen.dataset import generate_dataset
    from dynapatch.utils.config import RunConfig
    config = RunConfig()
    spec = config.scene_spec()
    detector = Detector.initialize(config.detector_config(), seed=config.seed)
    training = train_detector(detector,
                              generate_dataset(spec, 'detector', config.seed),
                              config.training_config())
    return {
        'config': config,
        'spec': spec,
        'detector': detector,
        'training': training,
        'train': [f for f in generate_dataset(spec, 'train', config.seed)
                  if f.screens],
        'test': generate_dataset(spec, 'test', config.seed),
    }


def screen_frames(frames, slots):
    """
    Frames with the screens outside `slots` dropped.
    """
    from dynapatch.data.frame import Frame
    kept = []
    for frame in frames:
        screens = {s: q for (s, q) in frame.screens.items() if s in slots}
        kept.append(Frame(frame.image, frame.angle, screens=screens,
                          truths=[(t.class_id, t.box) for t in frame.truths],
                          name=frame.name))
    return kept


def class_accuracy(detector, frames):
    from dynapatch.detector.postprocess import detect, detects_class
    hits = sum(detects_class(detect(detector, f.image), [f.class_id])
               for f in frames)
    return hits / len(frames)


def test_default_detector_reaches_required_rate(lab):
    from dynapatch.detector.training import clean_detection_rate
    assert lab['training'].success
    assert lab['training'].detection_rate >= 0.95
    rate, count = clean_detection_rate(lab['detector'], lab['test'],
                                       lab['config']['target_class'])
    assert count == len(lab['test'])
    assert rate >= 0.95


def test_training_needs_true_labels(lab):
    from dynapatch.data.frame import Frame
    from dynapatch.detector.network import Detector
    from dynapatch.detector.training import TrainingConfig, train_detector
    from dynapatch.scenegen.dataset import generate_dataset
    config, spec = lab['config'], lab['spec']
    frames = generate_dataset(spec, 'detector', config.seed)
    generator = np.random.default_rng(config.seed)
    classes = generator.permutation([f.class_id for f in frames])
    shuffled = [Frame(f.image, f.angle, screens=f.screens,
                      truths=[(int(c), f.truths[0].box)], name=f.name)
                for (f, c) in zip(frames, classes)]
    detector = Detector.initialize(config.detector_config(), seed=config.seed)
    schedule = config.training_config()
    train_detector(detector, shuffled,
                   TrainingConfig(epochs=schedule.epochs,
                                  max_epochs=schedule.epochs,
                                  target_class=schedule.target_class,
                                  seed=schedule.seed))
    unseen = generate_dataset(spec, 'detector', config.seed + 1)
    control = class_accuracy(detector, unseen)
    assert control <= 0.75
    assert class_accuracy(lab['detector'], unseen) > control


def test_second_screen_strengthens_the_attack(lab):
    from dynapatch.attack.crafting import craft_patches
    from dynapatch.data.patch import Patch
    from dynapatch.evaluation.metrics import attack_success_rate
    config, detector = lab['config'], lab['detector']
    attack = config.attack_config(loss_kind='obj_cls')
    target = attack.target_class
    back = [s.slot for s in lab['spec'].screen_slots if s.face == 'back']
    back_train = [f for f in screen_frames(lab['train'], back) if f.screens]
    back_test = screen_frames(lab['test'], back)
    one = craft_patches(back_train, 1, attack, detector).patches
    two = craft_patches(lab['train'], 2, attack, detector).patches
    one_rate = attack_success_rate(back_test, one, detector,
                                   target).success_rate
    two_rate = attack_success_rate(lab['test'], two, detector,
                                   target).success_rate
    assert one_rate >= 40.0
    assert two_rate > one_rate
    assert two_rate >= 70.0
    generator = np.random.default_rng(config.seed)
    noise = [Patch(generator.uniform(size=p.values.shape), p.slot)
             for p in two]
    assert attack_success_rate(lab['test'], noise, detector,
                               target).success_rate <= 20.0


def test_crafting_halves_the_objective(lab):
    from dynapatch.attack.crafting import craft_patches
    from dynapatch.attack.objective import objective
    attack = lab['config'].attack_config(loss_kind='obj_cls')
    frames = lab['train']
    initial = craft_patches(frames, 2, attack.copy(epochs=0),
                            lab['detector']).patches
    crafted = craft_patches(frames, 2, attack, lab['detector']).patches
    before = objective(initial, frames, attack, lab['detector']).item()
    after = objective(crafted, frames, attack, lab['detector']).item()
    assert after <= 0.5 * before


def test_semantic_crafting_misleads_the_class_set(lab):
    from dynapatch.attack.crafting import craft_patches
    from dynapatch.evaluation.metrics import (attack_success_rate,
                                              semantic_success_rate)
    config, detector = lab['config'], lab['detector']
    semantic = config.attack_config(loss_kind='semantic')
    classes = semantic.semantic_classes
    plain = craft_patches(lab['train'], 2,
                          config.attack_config(loss_kind='cls'),
                          detector).patches
    misled = craft_patches(lab['train'], 2, semantic, detector).patches
    for patches in (plain, misled):
        assert semantic_success_rate(lab['test'], patches, detector,
                                     classes).success_rate <= \
            attack_success_rate(lab['test'], patches, detector,
                                semantic.target_class).success_rate
    assert semantic_success_rate(lab['test'], misled, detector,
                                 classes).success_rate > \
        semantic_success_rate(lab['test'], plain, detector,
                              classes).success_rate


def target_cells(frame, grid):
    # cells overlapped by the ground-truth box of the target
    from dynapatch.utils.geometry import box_corners
    x0, y0, x1, y1 = box_corners(frame.truths[0].box)
    cols = range(max(0, int(np.floor(x0 * grid))),
                 min(grid, int(np.ceil(x1 * grid))))
    rows = range(max(0, int(np.floor(y0 * grid))),
                 min(grid, int(np.ceil(y1 * grid))))
    return [(r, c) for r in rows for c in cols]


def test_heatmap_effects(lab):
    from dynapatch.attack.crafting import craft_patches
    from dynapatch.evaluation.heatmaps import class_map, objectness_heatmap
    from dynapatch.placement.compositing import place_all
    config, detector = lab['config'], lab['detector']
    frames = [f for f in lab['test'] if f.screens]
    crafted = {kind: craft_patches(lab['train'], 2,
                                   config.attack_config(loss_kind=kind),
                                   detector).patches
               for kind in ('obj', 'cls')}
    clean = sum(objectness_heatmap(detector, f.image).total for f in frames)
    suppressed = sum(objectness_heatmap(
        detector, place_all(f, crafted['obj'])).total for f in frames)
    assert suppressed <= 0.7 * clean
    relabeled = sum(objectness_heatmap(
        detector, place_all(f, crafted['cls'])).total for f in frames)
    assert abs(relabeled - clean) < 0.1 * clean
    changed, cells = 0, 0
    grid = detector.config.grid_size
    for frame in frames:
        before = class_map(detector, frame.image).values
        after = class_map(detector, place_all(frame, crafted['cls'])).values
        for (row, col) in target_cells(frame, grid):
            cells += 1
            changed += int(before[row, col] != after[row, col])
    assert cells > 0
    assert changed >= 0.5 * cells


def test_dynamic_plan_keeps_the_best_prefix(lab):
    from dynapatch.data.frame import sort_by_angle
    from dynapatch.workflows.dynamic_split import dynamic_split_search
    config, spec = lab['config'], lab['spec']
    attack = config.attack_config(loss_kind='cls', max_subsets=3)
    plan = dynamic_split_search(sort_by_angle(lab['train']),
                                sort_by_angle(lab['test']), 2, attack,
                                lab['detector'],
                                angle_range=(spec.angle_min, spec.angle_max))
    rates = dict(plan.history)
    assert plan.subset_count >= 1
    chosen = list(rates).index(plan.subset_count)
    assert plan.rate == max(list(rates.values())[:chosen + 1])
    assert len(plan.history) <= 3


def test_screen_size_trend(lab):
    from dynapatch.workflows.screen_sweep import screen_size_sweep
    config = lab['config']
    rows = screen_size_sweep(lab['spec'], [0.0, 0.05, 0.1, 0.15, 0.25],
                             config.attack_config(), lab['detector'],
                             seed=config.seed)
    rates = [r.success_rate for r in rows]
    assert rates[0] <= 5.0
    for former, latter in zip(rates[1:-1], rates[2:]):
        assert latter >= former - 5.0
