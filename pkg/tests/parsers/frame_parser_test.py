# -*- coding: utf-8 -*-


"""
Test suite for the dataset parsers
"""


import pathlib

import pytest
import numpy as np


QUAD_A = [[1.2, 1.3], [5.7, 1.4], [5.6, 4.8], [1.1, 4.6]]
QUAD_B = [[8.2, 2.1], [13.4, 2.2], [13.3, 6.9], [8.1, 6.7]]


def test_sidecar_parser():
    from dynapatch.parsers.frame_parser import SidecarParser
    text = ("angle 12.25\n"
            "screen 1\n"
            "\n"
            "screen 0 1 2 3 2 3 4 1 4\n"
            "truth 0 0.5 0.5 0.2 0.1\n")
    sidecar = SidecarParser(text)
    assert sidecar.angle == 12.25
    assert sidecar.marked_slots == [1]
    assert np.array_equal(sidecar.screens[0], [[1, 2], [3, 2], [3, 4],
                                               [1, 4]])
    assert sidecar.truths == [(0, (0.5, 0.5, 0.2, 0.1))]


@pytest.mark.parametrize('text,message', [
    ("screen 1\n", "lacks the angle record"),
    ("angle 1.0\nscreen 0 1 2 3\n", "(line 2): unexpected record"),
    ("angle 1.0\ncolor red\n", "unexpected record 'color red'"),
    ("angle one\n", "(line 1): unable to parse numbers"),
])
def test_sidecar_parser_errors(text, message):
    from dynapatch.parsers.frame_parser import SidecarParser
    from dynapatch.utils.exceptions import FrameParserError
    with pytest.raises(FrameParserError) as exception:
        SidecarParser(text, 'frame.txt')
    assert message in str(exception.value)


def test_order_corners():
    from dynapatch.parsers.frame_parser import order_corners
    shuffled = [[5.5, 4.5], [1.5, 1.5], [1.5, 4.5], [5.5, 1.5]]
    assert np.array_equal(order_corners(shuffled),
                          [[1.5, 1.5], [5.5, 1.5], [5.5, 4.5], [1.5, 4.5]])


def test_decode_sentinel_quads():
    from dynapatch.parsers.frame_parser import decode_sentinel_quads
    pixels = np.zeros((10, 16, 3), dtype=np.uint8)
    for (row, col) in [(2, 8), (2, 13), (6, 13), (6, 8),
                       (1, 1), (1, 5), (4, 5), (4, 1)]:
        pixels[row, col] = (255, 0, 255)
    quads = decode_sentinel_quads(pixels)
    assert len(quads) == 2
    assert np.array_equal(quads[0], [[1.5, 1.5], [5.5, 1.5], [5.5, 4.5],
                                     [1.5, 4.5]])
    assert np.array_equal(quads[1], [[8.5, 2.5], [13.5, 2.5], [13.5, 6.5],
                                     [8.5, 6.5]])


def test_decode_sentinel_quads_requires_groups_of_four():
    from dynapatch.parsers.frame_parser import decode_sentinel_quads
    from dynapatch.utils.exceptions import FrameParserError
    pixels = np.zeros((4, 4, 3), dtype=np.uint8)
    pixels[0, 0] = pixels[1, 1] = pixels[2, 2] = (255, 0, 255)
    with pytest.raises(FrameParserError) as exception:
        decode_sentinel_quads(pixels)
    assert "found 3 sentinel pixels" in str(exception.value)


def test_split_round_trip(tmpdir, toy_frames):
    from dynapatch.parsers.frame_parser import read_split
    from dynapatch.scenegen.dataset import write_dataset
    frames = toy_frames(count=3)
    write_dataset(frames, tmpdir, 'test')
    restored = read_split(tmpdir, 'test')
    assert [f.name for f in restored] == [f.name for f in frames]
    for (original, frame) in zip(frames, restored):
        assert frame.angle == original.angle
        assert np.array_equal(frame.screens[0], original.screens[0])
        assert frame.truths == original.truths
        assert np.max(np.abs(frame.image - original.image)) <= \
            0.5 / 255.0 + 1.0E-12


def test_marked_round_trip(tmpdir, toy_frames):
    from dynapatch.data.frame import Frame
    from dynapatch.parsers.frame_parser import read_split
    from dynapatch.scenegen.dataset import write_dataset
    base = toy_frames(count=1)[0]
    frame = Frame(base.image, base.angle, screens={1: QUAD_A, 0: QUAD_B},
                  truths=base.truths, name=base.name)
    write_dataset([frame], tmpdir, 'train', mark=True)
    sidecar = (pathlib.Path(tmpdir) / 'train' / 'frame_0000.txt').read_text()
    assert "screen 1\nscreen 0\n" in sidecar
    restored = read_split(tmpdir, 'train')[0]
    # corners are recovered as centers of the marked pixels
    assert np.array_equal(restored.screens[1], [[1.5, 1.5], [5.5, 1.5],
                                                [5.5, 4.5], [1.5, 4.5]])
    assert np.array_equal(restored.screens[0], [[8.5, 2.5], [13.5, 2.5],
                                                [13.5, 6.5], [8.5, 6.5]])


def test_marked_screen_count_mismatch(tmpdir, toy_frames):
    from dynapatch.parsers.frame_parser import read_split
    from dynapatch.scenegen.dataset import write_dataset
    from dynapatch.utils.exceptions import FrameParserError
    write_dataset(toy_frames(count=1), tmpdir, 'train', mark=True)
    sidecar = pathlib.Path(tmpdir) / 'train' / 'frame_0000.txt'
    sidecar.write_text(sidecar.read_text().replace("screen 0\n",
                                                   "screen 0\nscreen 1\n"))
    with pytest.raises(FrameParserError) as exception:
        read_split(tmpdir, 'train')
    assert "lists 2 marked screens but 1 were decoded" in \
        str(exception.value)


def test_missing_files(tmpdir, toy_frames):
    from dynapatch.parsers.frame_parser import read_split, read_index
    from dynapatch.scenegen.dataset import write_dataset
    from dynapatch.utils.exceptions import DatasetError, FrameParserError
    with pytest.raises(DatasetError) as exception:
        read_split(tmpdir, 'train')
    assert "has no 'train' split" in str(exception.value)
    write_dataset(toy_frames(count=2), tmpdir, 'train')
    split_dir = pathlib.Path(tmpdir) / 'train'
    (split_dir / 'frame_0001.ppm').unlink()
    with pytest.raises(DatasetError) as exception:
        read_split(tmpdir, 'train')
    assert "missing frame file" in str(exception.value)
    (split_dir / 'index.txt').write_text("frame_0000\n")
    with pytest.raises(FrameParserError):
        read_index(split_dir)
    (split_dir / 'index.txt').unlink()
    with pytest.raises(DatasetError) as exception:
        read_index(split_dir)
    assert "missing index file" in str(exception.value)
