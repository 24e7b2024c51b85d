"""Box-to-measurement solver.

Turns one 3D box detection into the normalized relative position p_bar
(position divided by the unknown scale alpha) and from there into the world
pseudo-measurement consumed by the filters.

For each vertex, Q_i = I - q_i e3^T annihilates the camera-frame vertex
position, which gives three linear equations in p_bar:

    Q_i p_bar = -Q_i R_o^c p_bar_i^o

Stacking the eight vertices yields a 24x3 least-squares problem.
"""

from __future__ import annotations

import logging

import numpy as np

from core.errors import SingularSystemError
from core.models.detections import Box3DDetection, NormalizedRelPos, WorldPseudoMeasurement
from core.models.geometry import Cuboid, Pose, Rotation, Vector3
from core.models.states import MeasurementFrame
from geometry.camera import normalized_vertices, project_cuboid
from geometry.rotations import E3, normalize

logger = logging.getLogger(__name__)

SINGULAR_RTOL = 1e-8


def normalized_rel_pos(d: Box3DDetection) -> NormalizedRelPos:
    """Solve the stacked vertex system for p_bar = p_o^c / alpha.

    Raises SingularSystemError when the vertices are degenerate
    (smallest singular value below 1e-8 of the largest).
    """
    q = np.asarray(d.vertices, dtype=float)
    # Q_i = I - q_i e3^T for all vertices at once: (8, 3, 3)
    qs = np.broadcast_to(np.eye(3), (8, 3, 3)) - q[:, :, None] * E3[None, None, :]
    rotated = normalized_vertices(d.ldims) @ d.r_oc.T

    a = qs.reshape(24, 3)
    b = -np.einsum("kij,kj->ki", qs, rotated).reshape(24)

    solution, _, rank, sv = np.linalg.lstsq(a, b, rcond=None)
    if sv[-1] < SINGULAR_RTOL * sv[0]:
        raise SingularSystemError(
            f"vertex system is singular (rank {rank}, sigma ratio {sv[-1] / sv[0]:.3g})"
        )
    residual = float(np.linalg.norm(a @ solution - b))
    return NormalizedRelPos(p_bar=solution, residual=residual)


def to_world(n: NormalizedRelPos, r_cw: Rotation, t: float) -> WorldPseudoMeasurement:
    return WorldPseudoMeasurement(t_bar=r_cw @ n.p_bar, timestamp=t)


def thrust_direction(r_ow: Rotation) -> Vector3:
    """h = -R_o^w e3 for a multicopter whose body z axis opposes thrust."""
    return normalize(-np.asarray(r_ow, dtype=float)[:, 2])


# ---------------------------------------------------------------------------
# Detection helpers
# ---------------------------------------------------------------------------

def detection_from_pose(pose_oc: Pose, cuboid: Cuboid) -> Box3DDetection:
    """Exact detection of `cuboid` seen at object-to-camera pose `pose_oc`."""
    vertices, center = project_cuboid(pose_oc, cuboid)
    return Box3DDetection(
        r_oc=np.array(pose_oc.rotation, dtype=float),
        ldims=cuboid.normalized_dims,
        vertices=vertices,
        center=center,
    )


def bearing_from_detection(d: Box3DDetection, r_cw: Rotation) -> Vector3:
    """World-frame unit bearing toward the projected box center."""
    return normalize(r_cw @ d.center)


def angular_size(d: Box3DDetection) -> float:
    """Largest angle (rad) between any two vertex rays.

    This is the apparent-size measurement an isotropic-size method would
    see; for a box it changes with viewpoint.
    """
    rays = d.vertices / np.linalg.norm(d.vertices, axis=1, keepdims=True)
    cosines = np.clip(rays @ rays.T, -1.0, 1.0)
    return float(np.arccos(cosines.min()))


def measurement_from_detection(
    d: Box3DDetection,
    r_cw: Rotation,
    p_cw: Vector3,
    t: float,
    with_attitude: bool,
) -> MeasurementFrame:
    """Build every filter input available from one detection and camera pose."""
    n = normalized_rel_pos(d)
    h = thrust_direction(r_cw @ d.r_oc) if with_attitude else None
    return MeasurementFrame(
        t_bar=to_world(n, r_cw, t),
        p_cw=np.asarray(p_cw, dtype=float),
        timestamp=t,
        h=h,
        bearing=bearing_from_detection(d, r_cw),
        angle=angular_size(d),
    )
