"""Filter models -- noise settings, initialization, states, and measurement frames."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.models.detections import WorldPseudoMeasurement
from core.models.geometry import Vector3


class NoiseParams(BaseModel):
    """Measurement and process noise standard deviations.

    sigma_tbar and sigma_h describe the pseudo-measurement and thrust
    direction noise; sigma_p/v/a/alpha are process noise stds; the bearing
    and angle stds drive the bearing-only and bearing-angle baselines.
    """

    model_config = ConfigDict(extra="forbid")

    sigma_tbar: float = Field(default=0.2, ge=0)
    sigma_h: float = Field(default=0.02, ge=0)
    sigma_p: float = Field(default=0.0, ge=0)
    sigma_v: float = Field(default=0.001, ge=0)
    sigma_a: float = Field(default=0.0005 ** 0.5, ge=0)
    sigma_alpha: float = Field(default=0.0001, ge=0)
    sigma_bearing: float = Field(default=0.01, ge=0)
    sigma_angle: float = Field(default=0.01, ge=0)
    g: float = Field(default=9.81, gt=0)


class FilterInit(BaseModel):
    """Initial estimate shared by all estimators.

    The covariance is cov_scale * I unless cov_diag is given; for estimators
    with fewer states the leading entries of cov_diag are used.
    """

    model_config = ConfigDict(extra="forbid")

    p0: tuple[float, float, float] = (1.0, 2.0, 0.0)
    v0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    a0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    alpha0: float = Field(default=1.0, gt=0)
    cov_scale: float = Field(default=10.0, gt=0)
    cov_diag: list[float] | None = None

    def covariance(self, labels: list[str]) -> np.ndarray:
        """Initial covariance for a state laid out as `labels`.

        cov_diag entries are matched by label: a 10-entry list is read as
        (p, v, a, alpha) and a 7-entry list as (p, v, alpha).
        """
        if self.cov_diag is None:
            return self.cov_scale * np.eye(len(labels))
        layouts = {
            6: ["px", "py", "pz", "vx", "vy", "vz"],
            7: ["px", "py", "pz", "vx", "vy", "vz", "alpha"],
            10: ["px", "py", "pz", "vx", "vy", "vz", "ax", "ay", "az", "alpha"],
        }
        layout = layouts.get(len(self.cov_diag))
        if layout is None:
            raise ValueError(f"cov_diag must have 6, 7 or 10 entries, got {len(self.cov_diag)}")
        by_label = dict(zip(layout, self.cov_diag))
        missing = [label for label in labels if label not in by_label]
        if missing:
            raise ValueError(f"cov_diag has no entry for {missing}")
        return np.diag([by_label[label] for label in labels])


# ---------------------------------------------------------------------------
# Filter states
# ---------------------------------------------------------------------------

COMMON_LABELS = ["px", "py", "pz", "vx", "vy", "vz", "alpha"]
MAV_LABELS = ["px", "py", "pz", "vx", "vy", "vz", "ax", "ay", "az", "alpha"]
BEARING_LABELS = ["px", "py", "pz", "vx", "vy", "vz"]


@dataclass(frozen=True)
class CommonState:
    """(p, v, alpha) with a 7x7 covariance. The bearing-angle baseline
    reuses this layout with alpha holding its size estimate."""

    p: Vector3
    v: Vector3
    alpha: float
    cov: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.p, self.v, [self.alpha]])

    @classmethod
    def from_vector(cls, x: np.ndarray, cov: np.ndarray) -> CommonState:
        return cls(p=x[0:3].copy(), v=x[3:6].copy(), alpha=float(x[6]), cov=cov)


@dataclass(frozen=True)
class MavState:
    """(p, v, a, alpha) with a 10x10 covariance."""

    p: Vector3
    v: Vector3
    a: Vector3
    alpha: float
    cov: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.p, self.v, self.a, [self.alpha]])

    @classmethod
    def from_vector(cls, x: np.ndarray, cov: np.ndarray) -> MavState:
        return cls(p=x[0:3].copy(), v=x[3:6].copy(), a=x[6:9].copy(), alpha=float(x[9]), cov=cov)


@dataclass(frozen=True)
class BearingState:
    """(p, v) with a 6x6 covariance, for the bearing-only baseline."""

    p: Vector3
    v: Vector3
    cov: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.p, self.v])

    @classmethod
    def from_vector(cls, x: np.ndarray, cov: np.ndarray) -> BearingState:
        return cls(p=x[0:3].copy(), v=x[3:6].copy(), cov=cov)


# ---------------------------------------------------------------------------
# Measurements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasurementFrame:
    """Everything an estimator may consume at one timestamp.

    t_bar feeds the bearing-box filters, h the MAV attitude rows, bearing
    and angle the baselines. p_cw is the camera position in the world.
    """

    t_bar: WorldPseudoMeasurement
    p_cw: Vector3
    timestamp: float
    h: Vector3 | None = None
    bearing: Vector3 | None = None
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.h is not None and abs(np.linalg.norm(self.h) - 1.0) > 1e-9:
            raise ValueError("thrust direction must be a unit vector")
