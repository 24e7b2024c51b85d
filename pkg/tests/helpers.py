"""Builders shared by several test modules."""

from __future__ import annotations

import numpy as np

from box3d.solver import detection_from_pose, measurement_from_detection
from core.models.geometry import Cuboid, Pose
from core.models.states import MeasurementFrame
from geometry.rotations import look_at, random_rotation


def random_pose_and_cuboid(
    rng: np.random.Generator,
    depth_range: tuple[float, float] = (2.0, 50.0),
    dims_range: tuple[float, float] = (0.1, 3.0),
) -> tuple[Pose, Cuboid]:
    """Object-to-camera pose with every cuboid corner in front of the camera."""
    while True:
        dims = tuple(float(x) for x in rng.uniform(*dims_range, size=3))
        depth = float(rng.uniform(*depth_range))
        lateral = rng.uniform(-0.3, 0.3, size=2) * depth
        translation = np.array([lateral[0], lateral[1], depth])
        # corners lie within half the diagonal of the center
        if depth - 0.5 * float(np.linalg.norm(dims)) > 0.05:
            return (
                Pose(
                    rotation=random_rotation(rng),
                    translation=translation,
                    frame_from="object",
                    frame_to="camera",
                ),
                Cuboid(dims=dims),
            )


def exact_frame(
    p_o: np.ndarray,
    r_ow: np.ndarray,
    p_c: np.ndarray,
    cuboid: Cuboid,
    t: float = 0.0,
    with_attitude: bool = False,
) -> MeasurementFrame:
    """Noise-free measurement frame of a cuboid at p_o seen from p_c."""
    p_o = np.asarray(p_o, dtype=float)
    p_c = np.asarray(p_c, dtype=float)
    r_cw = look_at(p_c, p_o)
    pose = Pose(
        rotation=r_cw.T @ r_ow,
        translation=r_cw.T @ (p_o - p_c),
        frame_from="object",
        frame_to="camera",
    )
    d = detection_from_pose(pose, cuboid)
    return measurement_from_detection(d, r_cw, p_c, t, with_attitude)
