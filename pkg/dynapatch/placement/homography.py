# -*- coding: utf-8 -*-


"""
Planar homographies mapping the unit square onto screen quads.
"""


import numpy as np

from dynapatch.utils.exceptions import HomographyError
from dynapatch.utils.geometry import is_convex


UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])

# homographies with smaller determinant magnitude count as singular
MIN_DETERMINANT = 1.0E-12


class Homography(object):
    """
    3x3 projective transformation normalized to a unit bottom-right entry

    :param matrix: the transformation matrix
    :type matrix: `numpy.ndarray`
    :param corners: optional image of the unit-square corners the matrix
        was solved from (kept exact instead of re-mapping the corners)
    :type corners: `numpy.ndarray`
    :raises HomographyError: if the matrix is singular or cannot be
        normalized
    """

    def __init__(self, matrix, corners=None):
        matrix = np.array(matrix, dtype=np.float64)
        if matrix.shape != (3, 3):
            raise HomographyError("homography must be a 3x3 matrix (got {})"
                                  .format(matrix.shape))
        if matrix[2, 2] == 0.0:
            raise HomographyError("cannot normalize homography with zero "
                                  "bottom-right entry")
        self.matrix = matrix / matrix[2, 2]
        if abs(np.linalg.det(self.matrix)) <= MIN_DETERMINANT:
            raise HomographyError("homography is singular (determinant {})"
                                  .format(np.linalg.det(self.matrix)))
        self._corners = (None if corners is None else
                         np.array(corners, dtype=np.float64).reshape(4, 2))

    def __repr__(self):
        return "Homography({})".format(self.matrix.tolist())

    def apply(self, points):
        """
        Map points of shape (..., 2) through the homography.
        """
        points = np.asarray(points, dtype=np.float64)
        h = self.matrix
        x, y = points[..., 0], points[..., 1]
        w = h[2, 0] * x + h[2, 1] * y + h[2, 2]
        return np.stack([(h[0, 0] * x + h[0, 1] * y + h[0, 2]) / w,
                         (h[1, 0] * x + h[1, 1] * y + h[1, 2]) / w], axis=-1)

    @property
    def corners(self):
        """
        Images of the unit-square corners (0, 0), (1, 0), (1, 1), (0, 1).
        """
        if self._corners is None:
            self._corners = self.apply(UNIT_SQUARE)
        return self._corners

    def inverse(self):
        return Homography(np.linalg.inv(self.matrix))


def solve_homography(quad):
    """
    Solve for the homography mapping the unit-square corners (0, 0),
    (1, 0), (1, 1), (0, 1) onto the four quad corners.

    The eight unknowns (bottom-right entry fixed to 1) follow from the
    linear system of the direct linear transform.

    :param quad: corners of shape (4, 2) ordered top-left, top-right,
        bottom-right, bottom-left
    :type quad: `numpy.ndarray`
    :rtype: :class:`Homography`
    :raises HomographyError: if the quad is degenerate or not convex
    """
    quad = np.asarray(quad, dtype=np.float64)
    if quad.shape != (4, 2):
        raise HomographyError("expected four corner points but got shape {}"
                              .format(quad.shape))
    if not np.all(np.isfinite(quad)):
        raise HomographyError("quad corners must be finite")
    if not is_convex(quad):
        raise HomographyError("quad {} is degenerate (collinear corners) or "
                              "not convex".format(quad.tolist()))
    system = np.zeros((8, 8))
    rhs = np.zeros(8)
    for i, ((u, v), (x, y)) in enumerate(zip(UNIT_SQUARE, quad)):
        system[2 * i] = [u, v, 1.0, 0.0, 0.0, 0.0, -u * x, -v * x]
        system[2 * i + 1] = [0.0, 0.0, 0.0, u, v, 1.0, -u * y, -v * y]
        rhs[2 * i], rhs[2 * i + 1] = x, y
    try:
        solution = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exception:
        raise HomographyError("unable to solve for the homography: {}"
                              .format(exception))
    return Homography(np.append(solution, 1.0).reshape(3, 3), corners=quad)
