"""Core protocols -- the extension point every estimator implements.

The simulator, replay path and CLI only talk to estimators through this
protocol. All protocols use structural subtyping (typing.Protocol): a class
with the right methods implements it, no inheritance required.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from core.models.states import FilterInit, MeasurementFrame


@dataclass(frozen=True)
class EstimateSnapshot:
    """Estimator output at one instant.

    vector/cov are in the estimator's own state layout (see `labels`);
    acceleration and alpha are None for layouts that do not carry them.
    """

    labels: list[str]
    vector: np.ndarray
    cov: np.ndarray
    position: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray | None
    alpha: float | None


@dataclass(frozen=True)
class TargetTruth:
    """Ground truth used to build an estimator-specific truth vector."""

    position: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray
    alpha: float


@runtime_checkable
class Estimator(Protocol):
    """Recursive target-motion estimator driven frame by frame.

    Usage:
        est.initialize(init)
        for frame in frames:
            est.predict(dt)          # skipped for the first frame
            if detected:
                est.update(frame)
            snap = est.snapshot()
    """

    @property
    def name(self) -> str:
        """Unique estimator name, e.g. 'bearing-box-mav'."""
        ...

    @property
    def labels(self) -> list[str]:
        """State component names in vector order."""
        ...

    def initialize(self, init: FilterInit) -> None:
        """Reset the state to the given initial estimate."""
        ...

    def predict(self, dt: float) -> None:
        """Propagate the state by dt seconds."""
        ...

    def update(self, frame: MeasurementFrame) -> None:
        """Correct the state with one measurement frame."""
        ...

    def snapshot(self) -> EstimateSnapshot:
        """Current estimate and covariance."""
        ...

    def truth_vector(self, truth: TargetTruth) -> np.ndarray | None:
        """Ground truth in this estimator's state layout, or None when a
        state component has no true counterpart."""
        ...
