"""Observability models -- stacked observation systems and their verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel

from core.models.geometry import Vector3

RowTag = tuple[Literal["position", "attitude"], float]

ConditionTriggered = Literal["higher_order_motion", "thrust_orthogonal_accel", "none"]


@dataclass(frozen=True)
class Observation:
    """One noise-free pseudo-measurement: T_bar(t), camera position, optional h."""

    t: float
    t_bar: Vector3
    p_c: Vector3
    h: Vector3 | None = None


@dataclass(frozen=True)
class ObservationSample:
    """Ground truth at one instant, for checking the analytic conditions."""

    t: float
    p_c: Vector3
    a_c: Vector3
    p_o: Vector3
    a_o: Vector3
    alpha: float
    h: Vector3 | None = None

    def observation(self) -> Observation:
        return Observation(
            t=self.t,
            t_bar=(np.asarray(self.p_o) - np.asarray(self.p_c)) / self.alpha,
            p_c=np.asarray(self.p_c, dtype=float),
            h=self.h,
        )


@dataclass
class ObservationStack:
    """matrix @ [states..., alpha] = rhs, with one provenance tag per row."""

    matrix: np.ndarray
    rhs: np.ndarray
    meta: list[RowTag] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


class ObservabilityVerdict(BaseModel):
    """Numeric rank decision plus the analytic predicates it is checked against."""

    observable: bool
    numeric_rank: int
    cols: int
    sigma_min: float
    sigma_max: float
    condition_triggered: ConditionTriggered = "none"
    cond_a: bool = False
    cond_b: bool = False
    predicted: bool | None = None
    disagreement: bool = False
    in_band: bool = False


class WindowVerdict(BaseModel):
    """JSON-lines record written by `bbx observability` for one sliding window."""

    scenario: str
    t_start: float
    N: int
    n: int
    rank: int
    cols: int
    sigma_min: float
    sigma_max: float
    cond_a: bool
    cond_b: bool
    observable: bool
