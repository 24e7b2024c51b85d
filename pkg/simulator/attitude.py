"""Body attitudes of simulated targets.

A multicopter's thrust is collinear with a - g e3, so its attitude is fixed
up to the rotation about the thrust axis, which the yaw fills in.
"""

from __future__ import annotations

import math

import numpy as np

from core.errors import FreeFallError
from core.models.geometry import Rotation
from geometry.rotations import E3, normalize, rot_z

FREE_FALL_TOL = 1e-6


def mav_attitude_from_accel(a: np.ndarray, g: float = 9.81, yaw: float = 0.0) -> Rotation:
    """Object-to-world rotation whose -z axis is the thrust direction."""
    specific = np.asarray(a, dtype=float) - g * E3
    if np.linalg.norm(specific) <= FREE_FALL_TOL:
        raise FreeFallError(f"acceleration {np.asarray(a)} equals gravity; thrust undefined")
    b3 = -specific / np.linalg.norm(specific)
    heading = np.array([math.cos(yaw), math.sin(yaw), 0.0])
    b2 = np.cross(b3, heading)
    if np.linalg.norm(b2) < 1e-9:
        # thrust horizontal and along the heading
        b2 = np.cross(b3, np.array([-math.sin(yaw), math.cos(yaw), 0.0]))
    b2 = normalize(b2)
    b1 = np.cross(b2, b3)
    return np.column_stack([b1, b2, b3])


def ground_attitude(yaw: float) -> Rotation:
    """Upright object (car, box) turned to `yaw` about world z."""
    return rot_z(yaw)
