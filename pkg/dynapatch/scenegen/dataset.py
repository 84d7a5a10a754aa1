# -*- coding: utf-8 -*-


"""
Seeded generation of frame datasets and their on-disk layout.

A dataset directory holds one subdirectory per split. Every frame is
stored as binary PPM image plus a text sidecar:

    angle <degrees>
    screen <slot> <x0> <y0> <x1> <y1> <x2> <y2> <x3> <y3>
    truth <class> <cx> <cy> <w> <h>

Screens whose corners are marked by sentinel pixels in the image are
listed as bare `screen <slot>` lines in left-to-right image order. The
split's index file lists `<name> <angle>` lines in angle order.
"""


import logging
import pathlib

import numpy as np

from dynapatch.scenegen.renderer import FrameJitter, render_frame
from dynapatch.utils.defaults import FileDefaults
from dynapatch.utils.exceptions import DatasetError
from dynapatch.utils.images import mark_corners, write_ppm


logger = logging.getLogger(__name__)


# separate random streams of the splits
SPLIT_STREAMS = {'train': 0, 'test': 1, 'detector': 2}


def split_stream(split):
    try:
        return SPLIT_STREAMS[split]
    except KeyError:
        raise DatasetError("unknown split '{}' (valid splits: {})".format(
            split, ", ".join(FileDefaults.SPLITS)))


def sample_angles(spec, rng):
    """
    Angles spread uniformly over the scene's range, one per equal-width
    sector, each jittered within its sector.
    """
    count = spec.frame_count()
    if spec.angle_max <= spec.angle_min or count < 1:
        raise DatasetError("empty angle range [{}, {}] at {} frames per "
                           "degree".format(spec.angle_min, spec.angle_max,
                                           spec.frames_per_degree))
    spacing = (spec.angle_max - spec.angle_min) / count
    jitter = rng.uniform(-spec.angle_jitter, spec.angle_jitter, size=count)
    angles = spec.angle_min + (np.arange(count) + 0.5 + jitter) * spacing
    return np.clip(angles, spec.angle_min, spec.angle_max)


def sample_jitter(spec, rng):
    return FrameJitter(
        brightness=float(rng.uniform(-spec.brightness_jitter,
                                     spec.brightness_jitter)),
        background=tuple(rng.uniform(-0.05, 0.05, size=3)),
        color=tuple(rng.uniform(-spec.color_jitter, spec.color_jitter,
                                size=3)))


def generate_dataset(spec, split, seed):
    """
    Render the frames of a dataset split.

    The `train` and `test` splits show the target object with gray screen
    placeholders. The `detector` split alternates target frames (even
    positions, screens randomly gray or a random color) with frames of
    randomly drawn other classes and is used to train the detector.

    :param spec: scene parameters
    :type spec: :class:`~dynapatch.scenegen.scene.SceneSpec`
    :param split: one of train, test or detector
    :type split: `str`
    :param seed: dataset seed
    :type seed: `int`
    :returns: frames in increasing angle order
    :rtype: `list` of :class:`~dynapatch.data.frame.Frame`
    :raises DatasetError: if the angle range is empty
    """
    rng = np.random.default_rng([int(seed), split_stream(split)])
    angles = sample_angles(spec, rng)
    others = [c for c in range(len(spec.palette)) if c != spec.target_class]
    frames = []
    for index, angle in enumerate(angles):
        jitter = sample_jitter(spec, rng)
        class_id = spec.target_class
        screen_fill = None
        if split == 'detector':
            if index % 2 == 1 and others:
                class_id = others[int(rng.integers(len(others)))]
            else:
                screen_fill = {
                    s.slot: tuple(rng.uniform(0.0, 1.0, size=3))
                    for s in spec.screen_slots if rng.uniform() < 0.5}
        frames.append(render_frame(spec, float(angle), class_id,
                                   jitter=jitter, screen_fill=screen_fill,
                                   name="frame_{:04d}".format(index)))
    logger.info("generated {} {} frames over [{}, {}] degrees".format(
        len(frames), split, spec.angle_min, spec.angle_max))
    return frames


def sidecar_text(frame, marked_slots=()):
    """
    Sidecar content of a frame.

    :param marked_slots: slots whose corners are marked in the image and
        hence written as bare screen lines
    """
    lines = ["angle {!r}".format(frame.angle)]
    for slot in marked_slots:
        lines.append("screen {}".format(slot))
    for slot in frame.visible_slots:
        if slot in marked_slots:
            continue
        coordinates = " ".join(repr(float(v))
                               for v in frame.screens[slot].reshape(-1))
        lines.append("screen {} {}".format(slot, coordinates))
    for truth in frame.truths:
        lines.append("truth {} {}".format(truth.class_id, " ".join(
            repr(float(v)) for v in truth.box)))
    return "\n".join(lines) + "\n"


def write_dataset(frames, directory, split, mark=False):
    """
    Write the frames of one split below `directory/split`.

    :param mark: mark screen corners with sentinel pixels instead of
        storing sub-pixel coordinates
    :type mark: `bool`
    :returns: paths of all written files
    :rtype: `list`
    """
    split_stream(split)
    split_dir = pathlib.Path(directory) / split
    split_dir.mkdir(parents=True, exist_ok=True)
    written = []
    index_lines = []
    for position, frame in enumerate(frames):
        name = frame.name or "frame_{:04d}".format(position)
        image = frame.image
        marked_slots = ()
        if mark and frame.screens:
            marked_slots = sorted(frame.screens, key=lambda slot: float(
                frame.screens[slot][:, 0].mean()))
            image = mark_corners(image, [frame.screens[s]
                                         for s in marked_slots])
        image_path = split_dir / "{}.ppm".format(name)
        sidecar_path = split_dir / "{}.txt".format(name)
        write_ppm(image_path, image)
        sidecar_path.write_text(sidecar_text(frame, marked_slots))
        written.extend([image_path, sidecar_path])
        index_lines.append("{} {!r}".format(name, frame.angle))
    index_path = split_dir / FileDefaults.FNAMES['index']
    index_path.write_text("\n".join(index_lines) + "\n")
    written.append(index_path)
    return written
