# -*- coding: utf-8 -*-


"""
Planar geometry helpers shared by the renderer, the placing algorithm and
the detector postprocessing.

Image-space points are (x, y) pairs in pixel units with the origin at the
top-left image corner; pixel (row, col) covers [col, col + 1) x
[row, row + 1) and has its center at (col + 0.5, row + 0.5).
"""


import numpy as np


def polygon_area(points):
    """
    Absolute area enclosed by a simple polygon (shoelace formula).

    :param points: polygon corners of shape (N, 2)
    :type points: `numpy.ndarray`
    :rtype: `float`
    """
    points = np.asarray(points, dtype=np.float64)
    x, y = points[:, 0], points[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) -
                           np.dot(y, np.roll(x, -1))))


def edge_crosses(points):
    """
    z-components of the cross products of consecutive polygon edges.
    """
    points = np.asarray(points, dtype=np.float64)
    edges = np.roll(points, -1, axis=0) - points
    following = np.roll(edges, -1, axis=0)
    return edges[:, 0] * following[:, 1] - edges[:, 1] * following[:, 0]


def is_convex(points, tolerance=1.0E-9):
    """
    Check if a polygon is strictly convex with consistent winding.

    Corners closer than tolerance (relative to the polygon's extent) to the
    line through their neighbours count as collinear, i.e. not convex.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.shape[0] < 3:
        return False
    extent = float(np.max(np.ptp(points, axis=0)))
    if extent == 0.0:
        return False
    crosses = edge_crosses(points) / (extent * extent)
    return bool(np.all(crosses > tolerance) or np.all(crosses < -tolerance))


def inside_bounds(points, height, width):
    """
    Check that all points lie within [0, width] x [0, height].
    """
    points = np.asarray(points, dtype=np.float64)
    return bool(np.all(points[:, 0] >= 0.0) and
                np.all(points[:, 0] <= width) and
                np.all(points[:, 1] >= 0.0) and
                np.all(points[:, 1] <= height))


def polygon_pixels(points, height, width):
    """
    Pixels of an image whose centers lie inside a convex polygon.

    Pixel centers located exactly on an edge count as inside. Pixels
    outside the image are never returned.

    :param points: convex polygon corners of shape (N, 2), any winding
    :type points: `numpy.ndarray`
    :param height: image height in pixels
    :type height: `int`
    :param width: image width in pixels
    :type width: `int`
    :returns: row and column indices of all covered pixels in row-major
        order
    :rtype: `tuple` of two `numpy.ndarray`
    """
    points = np.asarray(points, dtype=np.float64)
    empty = (np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
    row_min = max(int(np.floor(points[:, 1].min() - 0.5)), 0)
    row_max = min(int(np.ceil(points[:, 1].max() - 0.5)), height - 1)
    col_min = max(int(np.floor(points[:, 0].min() - 0.5)), 0)
    col_max = min(int(np.ceil(points[:, 0].max() - 0.5)), width - 1)
    if row_min > row_max or col_min > col_max:
        return empty
    rows, cols = np.mgrid[row_min:row_max + 1, col_min:col_max + 1]
    center_x = cols.reshape(-1) + 0.5
    center_y = rows.reshape(-1) + 0.5
    # signed side of every pixel center with respect to every edge
    starts = points
    ends = np.roll(points, -1, axis=0)
    sides = ((ends[:, 0] - starts[:, 0])[:, None] *
             (center_y[None, :] - starts[:, 1][:, None]) -
             (ends[:, 1] - starts[:, 1])[:, None] *
             (center_x[None, :] - starts[:, 0][:, None]))
    inside = np.all(sides >= 0.0, axis=0) | np.all(sides <= 0.0, axis=0)
    return rows.reshape(-1)[inside], cols.reshape(-1)[inside]


def box_corners(box):
    """
    Convert a (cx, cy, w, h) box to (x0, y0, x1, y1).
    """
    cx, cy, w, h = box
    return (cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h)


def iou(box_a, box_b):
    """
    Intersection over union of two (cx, cy, w, h) boxes.

    :rtype: `float`
    """
    ax0, ay0, ax1, ay1 = box_corners(box_a)
    bx0, by0, bx1, by1 = box_corners(box_b)
    overlap_w = max(0.0, min(ax1, bx1) - max(ax0, bx0))
    overlap_h = max(0.0, min(ay1, by1) - max(ay0, by0))
    intersection = overlap_w * overlap_h
    union = ((ax1 - ax0) * (ay1 - ay0) + (bx1 - bx0) * (by1 - by0) -
             intersection)
    if union <= 0.0:
        return 0.0
    return intersection / union
