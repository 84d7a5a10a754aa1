# -*- coding: utf-8 -*-


"""
Pinhole camera orbiting the scene at fixed distance and elevation.
"""


import numpy as np

from dynapatch.utils.exceptions import ProjectionError


# points closer than this to the image plane cannot be projected
MIN_DEPTH = 1.0E-6


def _normalize(vector):
    return vector / np.sqrt(np.sum(vector * vector))


def _dot(points, axis):
    # explicit sums keep equal coordinates bit-identical after projection
    return (points[..., 0] * axis[0] + points[..., 1] * axis[1] +
            points[..., 2] * axis[2])


class Camera(object):
    """
    Pinhole camera looking at a target point

    :param angle: azimuth in degrees (0 = behind the object, positive
        angles towards +x)
    :type angle: `float`
    :param distance: distance between camera and target point
    :type distance: `float`
    :param elevation: elevation above the target point in degrees
    :type elevation: `float`
    :param target: world point the camera looks at
    :type target: `tuple`
    :param focal_length: focal length in pixels
    :type focal_length: `float`
    :param image_size: square image size in pixels (principal point in the
        image center)
    :type image_size: `int`
    """

    def __init__(self, angle, distance, elevation, target, focal_length,
                 image_size):
        self.angle = float(angle)
        self.focal_length = float(focal_length)
        self.image_size = int(image_size)
        self.center = 0.5 * self.image_size
        azimuth = np.radians(self.angle)
        tilt = np.radians(elevation)
        self.target = np.array(target, dtype=np.float64)
        offset = distance * np.array([np.sin(azimuth) * np.cos(tilt),
                                      np.sin(tilt),
                                      -np.cos(azimuth) * np.cos(tilt)])
        self.position = self.target + offset
        self.forward = _normalize(self.target - self.position)
        up = np.array([0.0, 1.0, 0.0])
        self.right = _normalize(np.cross(self.forward, up))
        self.up = np.cross(self.right, self.forward)

    @classmethod
    def from_spec(cls, spec, angle):
        return cls(angle, spec.camera_distance, spec.camera_elevation,
                   spec.camera_target, spec.focal_length, spec.image_size)

    def depth(self, points):
        points = np.asarray(points, dtype=np.float64)
        return _dot(points - self.position, self.forward)

    def project(self, points):
        """
        Project world points to image coordinates.

        :param points: world points of shape (..., 3)
        :type points: `numpy.ndarray`
        :returns: image points (x, y) of shape (..., 2)
        :rtype: `numpy.ndarray`
        :raises ProjectionError: if a point lies behind the camera
        """
        points = np.asarray(points, dtype=np.float64)
        relative = points - self.position
        depth = _dot(relative, self.forward)
        if np.any(depth <= MIN_DEPTH):
            raise ProjectionError("cannot project points behind the camera "
                                  "at view angle {}".format(self.angle))
        x = self.center + self.focal_length * _dot(relative, self.right) / \
            depth
        y = self.center - self.focal_length * _dot(relative, self.up) / depth
        return np.stack([x, y], axis=-1)

    def faces_towards(self, point, normal):
        """
        Check if a planar face with outward normal is seen from its front.
        """
        return float(np.dot(np.asarray(point) - self.position,
                            np.asarray(normal))) < 0.0
