"""Detection models -- one frame's 3D box and the quantities derived from it."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from core.models.geometry import Rotation, UnitPlanePoint, Vector3


@dataclass(frozen=True)
class Box3DDetection:
    """Category-level 3D box detection for one frame.

    ldims are normalized dimensions (1, l2/l1, l3/l1); vertices follow the
    geometry.camera.VERTEX_SIGNS order.
    """

    r_oc: Rotation
    ldims: tuple[float, float, float]
    vertices: np.ndarray  # (8, 3) unit-plane points
    center: UnitPlanePoint

    def __post_init__(self) -> None:
        if self.ldims[0] != 1.0:
            raise ValueError(f"first normalized dim must be exactly 1, got {self.ldims[0]}")
        if self.ldims[1] <= 0 or self.ldims[2] <= 0:
            raise ValueError(f"normalized dims must be positive, got {self.ldims}")
        if np.shape(self.vertices) != (8, 3):
            raise ValueError(f"expected 8 unit-plane vertices, got shape {np.shape(self.vertices)}")
        if not (np.all(self.vertices[:, 2] == 1.0) and self.center[2] == 1.0):
            raise ValueError("unit-plane points must have third component 1")


@dataclass(frozen=True)
class NormalizedRelPos:
    """Target position in the camera frame divided by the unknown scale alpha."""

    p_bar: Vector3
    residual: float


@dataclass(frozen=True)
class WorldPseudoMeasurement:
    """T_bar = R_c^w p_bar, so that p_o^w - p_c^w = alpha * T_bar."""

    t_bar: Vector3
    timestamp: float

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.t_bar)):
            raise ValueError("pseudo-measurement has non-finite components")
