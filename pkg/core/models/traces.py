"""Trace models -- per-frame truth, estimate records, runs, and metric summaries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel

from core.errors import EmptyTraceError
from core.models.detections import Box3DDetection
from core.models.geometry import Rotation, Vector3
from core.models.states import MeasurementFrame
from core.protocols import EstimateSnapshot


@dataclass(frozen=True)
class FrameTruth:
    """Ground truth and synthetic measurements at one frame.

    `frame` is what the estimators receive; it is None when the target is
    out of view.
    """

    t: float
    p_o: Vector3
    v_o: Vector3
    a_o: Vector3
    r_ow: Rotation
    p_c: Vector3
    v_c: Vector3
    a_c: Vector3
    r_cw: Rotation
    alpha: float
    h: Vector3 | None
    exact: Box3DDetection | None
    noisy: Box3DDetection | None
    frame: MeasurementFrame | None
    in_fov: bool


@dataclass(frozen=True)
class TraceRecord:
    """One estimator output. Truth fields are None for replays without ground truth."""

    t: float
    p_true: Vector3 | None
    v_true: Vector3 | None
    a_true: Vector3 | None
    alpha_true: float | None
    estimate: EstimateSnapshot
    depth_true: float | None
    depth_est: float | None
    in_fov: bool
    nees: float | None = None
    nees_pinv: bool = False


@dataclass
class EstimateTrace:
    """Records of one estimator over one scenario, in time order."""

    estimator: str
    scenario: str
    seed: int
    records: list[TraceRecord] = field(default_factory=list)

    def append(self, record: TraceRecord) -> None:
        if self.records and record.t <= self.records[-1].t:
            raise ValueError(
                f"trace times must increase: {record.t} after {self.records[-1].t}"
            )
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def require(self) -> list[TraceRecord]:
        if not self.records:
            raise EmptyTraceError(f"trace of {self.estimator} on {self.scenario} is empty")
        return self.records

    @property
    def positions(self) -> np.ndarray:
        return np.array([r.estimate.position for r in self.records])


class MetricSummary(BaseModel):
    """summary.json entry for one estimator on one run."""

    scenario: str
    estimator: str
    nide: float | None
    mean_nees: float | None
    rmse_x: float
    rmse_y: float
    rmse_z: float
    frames: int
    seed: int


@dataclass
class ScenarioRun:
    """A record of one scenario run and its estimator traces."""

    scenario: str
    seed: int
    status: Literal["pending", "running", "completed", "failed"] = "pending"
    frames: int = 0
    traces: dict[str, EstimateTrace] = field(default_factory=dict)
    truths: list[FrameTruth] = field(default_factory=list)
    summaries: list[MetricSummary] = field(default_factory=list)
    error: str | None = None

    def mark_started(self) -> None:
        self.status = "running"

    def mark_completed(self, summaries: list[MetricSummary], frames: int) -> None:
        self.status = "completed"
        self.summaries = summaries
        self.frames = frames

    def mark_failed(self, error: str) -> None:
        self.status = "failed"
        self.error = error
