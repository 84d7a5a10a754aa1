# -*- coding: utf-8 -*-


"""
Test suite for placing patches onto screen quads
"""


import pytest
import numpy as np


def test_pixel_aligned_quad_reproduces_patch(rng):
    from dynapatch.tensor import Tensor
    from dynapatch.placement.compositing import composite_patch
    from dynapatch.placement.homography import solve_homography
    image = np.zeros((3, 4, 4))
    patch = rng.uniform(size=(3, 4, 4))
    quad = [[0.0, 0.0], [4.0, 0.0], [4.0, 4.0], [0.0, 4.0]]
    out = composite_patch(image, Tensor(patch), solve_homography(quad))
    assert np.allclose(out.values, patch, atol=1.0E-12)


def test_bilinear_upsampling():
    from dynapatch.tensor import Tensor
    from dynapatch.placement.compositing import composite_patch
    from dynapatch.placement.homography import solve_homography
    patch = np.zeros((3, 2, 2))
    patch[:, :, 1] = 1.0
    homography = solve_homography([[0.0, 0.0], [4.0, 0.0], [4.0, 4.0],
                                   [0.0, 4.0]])
    out = composite_patch(np.zeros((3, 4, 4)), Tensor(patch), homography)
    for row in range(4):
        assert np.allclose(out.values[0, row], [0.0, 0.25, 0.75, 1.0])


def test_pixels_outside_quad_are_unchanged(rng):
    from dynapatch.tensor import Tensor
    from dynapatch.placement.compositing import composite_patch
    from dynapatch.placement.homography import solve_homography
    image = rng.uniform(size=(3, 5, 5))
    homography = solve_homography([[1.0, 1.0], [3.0, 1.0], [3.0, 3.0],
                                   [1.0, 3.0]])
    out = composite_patch(image, Tensor(np.ones((3, 2, 2))), homography)
    inside = np.zeros((5, 5), dtype=bool)
    inside[1:3, 1:3] = True
    assert np.allclose(out.values[:, inside], 1.0)
    assert np.array_equal(out.values[:, ~inside], image[:, ~inside])


def test_quad_without_pixel_centers(rng):
    from dynapatch.tensor import Tensor
    from dynapatch.placement.compositing import composite_patch
    from dynapatch.placement.homography import solve_homography
    image = Tensor(rng.uniform(size=(3, 4, 4)))
    homography = solve_homography([[1.1, 1.1], [1.4, 1.1], [1.4, 1.4],
                                   [1.1, 1.4]])
    out = composite_patch(image, Tensor(np.ones((3, 2, 2))), homography)
    assert out is image


def test_quad_outside_image_is_rejected():
    from dynapatch.tensor import Tensor
    from dynapatch.placement.compositing import composite_patch
    from dynapatch.placement.homography import solve_homography
    from dynapatch.utils.exceptions import PlacementError
    homography = solve_homography([[2.0, 2.0], [6.0, 2.0], [6.0, 5.0],
                                   [2.0, 5.0]])
    with pytest.raises(PlacementError) as exception:
        composite_patch(np.zeros((3, 4, 4)), Tensor(np.ones((3, 2, 2))),
                        homography)
    assert "lies outside the 4x4 image" in str(exception.value)


def test_composite_gradients(rng):
    from dynapatch.tensor import Tensor
    from dynapatch.tensor.gradcheck import check_gradient
    from dynapatch.placement.compositing import composite_patch
    from dynapatch.placement.homography import solve_homography
    image = Tensor(rng.uniform(size=(3, 12, 12)), requires_grad=True)
    pixels = Tensor(rng.uniform(size=(3, 3, 5)), requires_grad=True)
    homography = solve_homography([[2.3, 1.7], [10.1, 3.2], [9.4, 10.6],
                                   [1.8, 8.9]])
    weights = Tensor(rng.normal(size=(3, 12, 12)))
    check_gradient(lambda: (composite_patch(image, pixels, homography) *
                            weights).sum(), [image, pixels])
    # replaced image values receive no gradient
    out = composite_patch(image, pixels, homography)
    replaced = out.values != image.values
    image.zero_grad()
    out.sum().backward()
    assert np.all(image.grad[replaced] == 0.0)


def test_geometry_is_cached():
    from dynapatch.placement.compositing import placement_geometry
    from dynapatch.placement.homography import solve_homography
    quad = np.array([[2.3, 1.7], [10.1, 3.2], [9.4, 10.6], [1.8, 8.9]])
    first = placement_geometry(solve_homography(quad), (3, 3, 5),
                               (3, 12, 12))
    second = placement_geometry(solve_homography(quad.copy()), (3, 3, 5),
                                (3, 12, 12))
    assert first is second
    assert first.pixel_count * 3 == first.positions.size
    assert np.allclose(first.weights.sum(axis=1), 1.0)


def test_place_all(toy_frames, rng):
    from dynapatch.data.patch import Patch
    from dynapatch.placement.compositing import place_all
    from dynapatch.placement.transforms import TransformParams
    from dynapatch.utils.exceptions import PlacementError
    frame = toy_frames(count=1)[0]
    white = Patch(np.ones((3, 2, 2)), 0)
    unused = Patch(np.zeros((3, 2, 2)), 1)
    out = place_all(frame, [unused, white])
    # pixels with centers inside the quad (4, 5)-(12, 11)
    assert np.allclose(out.values[:, 5:11, 4:12], 1.0)
    assert np.array_equal(out.values[:, :5], frame.image[:, :5])
    darker = place_all(frame, [white], transforms={
        0: TransformParams(-0.5, 1.0, np.zeros((3, 2, 2)))})
    assert np.allclose(darker.values[:, 5:11, 4:12], 0.5)
    assert np.array_equal(place_all(frame, []).values, frame.image)
    with pytest.raises(PlacementError) as exception:
        place_all(frame, [white, Patch(np.ones((3, 2, 2)), 0)])
    assert "duplicate slot assignment" in str(exception.value)
