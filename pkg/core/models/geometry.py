"""Geometry models -- camera intrinsics, cuboids, poses between named frames."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator

# 3x3 orthonormal matrix with det +1 (see geometry.rotations.check_rotation)
Rotation = NDArray[np.float64]

# 3-vector whose third component is exactly 1
UnitPlanePoint = NDArray[np.float64]

Vector3 = NDArray[np.float64]

Frame = Literal["world", "camera", "object"]


class CameraIntrinsics(BaseModel):
    """Pinhole intrinsics in pixels. Lens distortion is not modelled."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    fx: float = Field(default=600.0, gt=0)
    fy: float = Field(default=600.0, gt=0)
    cx: float = 640.0
    cy: float = 360.0
    width: int = Field(default=1280, gt=0)
    height: int = Field(default=720, gt=0)


class Cuboid(BaseModel):
    """Target cuboid with true dimensions (l1, l2, l3) in meters.

    The unknown scale of the estimators is alpha = l1.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    dims: tuple[float, float, float]

    @field_validator("dims")
    @classmethod
    def _positive(cls, dims: tuple[float, float, float]) -> tuple[float, float, float]:
        if any(d <= 0 for d in dims):
            raise ValueError(f"cuboid dims must be positive, got {dims}")
        return dims

    @property
    def alpha(self) -> float:
        return self.dims[0]

    @property
    def normalized_dims(self) -> tuple[float, float, float]:
        l1, l2, l3 = self.dims
        return (1.0, l2 / l1, l3 / l1)


@dataclass(frozen=True)
class Pose:
    """Rigid transform mapping coordinates in `frame_from` to `frame_to`.

    x_to = rotation @ x_from + translation
    """

    rotation: Rotation
    translation: Vector3
    frame_from: Frame
    frame_to: Frame

    def apply(self, point: Vector3) -> Vector3:
        return self.rotation @ np.asarray(point, dtype=float) + self.translation

    def inverse(self) -> Pose:
        rt = self.rotation.T
        return Pose(
            rotation=rt,
            translation=-rt @ self.translation,
            frame_from=self.frame_to,
            frame_to=self.frame_from,
        )
