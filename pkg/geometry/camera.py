"""Pinhole camera and cuboid projection.

Produces exact (noise-free) unit-plane measurements from ground-truth poses.
Camera frame: x right, y down, z along the optical axis.
"""

from __future__ import annotations

import itertools

import numpy as np

from core.errors import NonPositiveDepthError
from core.models.geometry import CameraIntrinsics, Cuboid, Pose, UnitPlanePoint, Vector3

# Sign pattern of each vertex, in order. Index i = 4*bx + 2*by + bz where a
# set bit means the negative half-dimension: (+,+,+), (+,+,-), ..., (-,-,-).
VERTEX_SIGNS = np.array(list(itertools.product((1.0, -1.0), repeat=3)))


def cuboid_vertices(c: Cuboid) -> np.ndarray:
    """Eight object-frame corners of `c`, shape (8, 3), in VERTEX_SIGNS order."""
    half = 0.5 * np.asarray(c.dims, dtype=float)
    return VERTEX_SIGNS * half


def normalized_vertices(ldims: tuple[float, float, float] | np.ndarray) -> np.ndarray:
    """Corners of the cuboid scaled by 1/alpha, from normalized dims (1, l2/l1, l3/l1)."""
    return VERTEX_SIGNS * (0.5 * np.asarray(ldims, dtype=float))


def pixel_to_unit_plane(m: tuple[float, float] | np.ndarray, k: CameraIntrinsics) -> UnitPlanePoint:
    mx, my = float(m[0]), float(m[1])
    return np.array([(mx - k.cx) / k.fx, (my - k.cy) / k.fy, 1.0])


def unit_plane_to_pixel(q: UnitPlanePoint, k: CameraIntrinsics) -> np.ndarray:
    return np.array([k.fx * q[0] + k.cx, k.fy * q[1] + k.cy])


def project_point(p_c: Vector3, index: int | None = None) -> UnitPlanePoint:
    """Perspective projection onto the z = 1 plane."""
    p = np.asarray(p_c, dtype=float)
    depth = p[2]
    if depth <= 0:
        raise NonPositiveDepthError(float(depth), index)
    q = p / depth
    q[2] = 1.0
    return q


def project_cuboid(pose_oc: Pose, c: Cuboid) -> tuple[np.ndarray, UnitPlanePoint]:
    """Project the cuboid's corners and center into the camera.

    Returns (vertices, center) with vertices of shape (8, 3) on the unit plane.
    """
    vertices_c = cuboid_vertices(c) @ pose_oc.rotation.T + pose_oc.translation
    projected = np.empty((8, 3))
    for i, p in enumerate(vertices_c):
        projected[i] = project_point(p, index=i)
    center = project_point(pose_oc.translation)
    return projected, center


def in_image(q: UnitPlanePoint, k: CameraIntrinsics) -> bool:
    """Whether a unit-plane point falls inside the image bounds."""
    u, v = unit_plane_to_pixel(q, k)
    return bool(0.0 <= u <= k.width and 0.0 <= v <= k.height)
