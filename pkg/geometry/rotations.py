"""Rotation helpers -- validation, elementary rotations, noise, look-at.

Rotations are plain 3x3 numpy matrices. scipy's Rotation class is used for
sampling and small-angle perturbations; results are always converted back
to matrices before leaving this module.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import polar
from scipy.spatial.transform import Rotation as ScipyRotation

from core.errors import ZeroVectorError
from core.models.geometry import Rotation, Vector3

E3 = np.array([0.0, 0.0, 1.0])

ORTHONORMAL_TOL = 1e-9


def check_rotation(r: np.ndarray, tol: float = ORTHONORMAL_TOL) -> Rotation:
    """Return `r` as a float 3x3 array, raising ValueError if it is not a rotation."""
    m = np.asarray(r, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got shape {m.shape}")
    if not np.allclose(m.T @ m, np.eye(3), atol=tol):
        raise ValueError("rotation is not orthonormal")
    if abs(np.linalg.det(m) - 1.0) > tol:
        raise ValueError("rotation determinant is not +1")
    return m


def nearest_rotation(m: np.ndarray) -> Rotation:
    """Project a near-rotation onto SO(3) with the polar decomposition."""
    u, _ = polar(np.asarray(m, dtype=float))
    if np.linalg.det(u) < 0:
        # polar picks the nearest orthogonal matrix; flip to keep det +1
        w, _, vt = np.linalg.svd(m)
        w[:, -1] *= -1
        u = w @ vt
    return u


def rot_x(angle: float) -> Rotation:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle: float) -> Rotation:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle: float) -> Rotation:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def random_rotation(rng: np.random.Generator) -> Rotation:
    """Uniformly distributed rotation drawn from `rng`."""
    # a normalized 4D Gaussian is a uniform unit quaternion
    return ScipyRotation.from_quat(rng.normal(size=4)).as_matrix()


def perturb_rotation(r: Rotation, sigma: float, rng: np.random.Generator) -> Rotation:
    """Left-multiply `r` by a random rotation with N(0, sigma^2) rotation-vector components.

    The product is re-orthonormalized so accumulated rounding never leaves SO(3).
    """
    if sigma <= 0:
        return np.array(r, dtype=float)
    delta = ScipyRotation.from_rotvec(rng.normal(0.0, sigma, size=3)).as_matrix()
    return nearest_rotation(delta @ r)


def normalize(v: np.ndarray, tol: float = 1e-9) -> Vector3:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm < tol:
        raise ZeroVectorError(f"cannot normalize vector with norm {norm:.3g}")
    return v / norm


def look_at(eye: Vector3, target: Vector3) -> Rotation:
    """Camera-to-world rotation pointing the optical axis from `eye` at `target`.

    Camera axes: x right, y down, z forward. World gravity is +z, so image
    "down" is aligned with world +z as far as the viewing direction allows.
    """
    forward = normalize(np.asarray(target, dtype=float) - np.asarray(eye, dtype=float))
    right = np.cross(E3, forward)
    if np.linalg.norm(right) < 1e-6:
        # looking straight up or down
        right = np.cross(np.array([1.0, 0.0, 0.0]), forward)
    right = normalize(right)
    down = np.cross(forward, right)
    return np.column_stack([right, down, forward])
