"""Shared frame loop of the built-in estimators.

Each plugin names its state layout and the three filter functions that
act on it; this base keeps the mutable state and builds the snapshot.
"""

from __future__ import annotations

from typing import Any, Callable, ClassVar, Generic, TypeVar

import numpy as np

from core.models.states import BearingState, CommonState, FilterInit, MavState, MeasurementFrame, NoiseParams
from core.protocols import EstimateSnapshot, TargetTruth

S = TypeVar("S", CommonState, MavState, BearingState)


class FilterEstimator(Generic[S]):
    """Estimator protocol on top of the pure functions in filters.plkf.

    Subclasses set `name`, `labels`, `predict_fn`, `update_fn` and
    implement `initial_state` and `truth_vector`.
    """

    name: ClassVar[str]
    labels: ClassVar[list[str]]
    predict_fn: ClassVar[Callable[[Any, float, NoiseParams], Any]]
    update_fn: ClassVar[Callable[[Any, MeasurementFrame, NoiseParams], Any]]

    def __init__(self, noise: NoiseParams) -> None:
        self.noise = noise
        self._state: S | None = None

    @property
    def state(self) -> S:
        if self._state is None:
            raise RuntimeError(f"{self.name}: estimator used before initialize()")
        return self._state

    def initial_state(self, init: FilterInit) -> S:
        raise NotImplementedError

    def truth_vector(self, truth: TargetTruth) -> np.ndarray | None:
        raise NotImplementedError

    def initialize(self, init: FilterInit) -> None:
        self._state = self.initial_state(init)

    def predict(self, dt: float) -> None:
        self._state = type(self).predict_fn(self.state, dt, self.noise)

    def update(self, frame: MeasurementFrame) -> None:
        self._state = type(self).update_fn(self.state, frame, self.noise)

    def snapshot(self) -> EstimateSnapshot:
        s = self.state
        a = getattr(s, "a", None)
        return EstimateSnapshot(
            labels=self.labels,
            vector=s.vector,
            cov=s.cov.copy(),
            position=s.p.copy(),
            velocity=s.v.copy(),
            acceleration=None if a is None else a.copy(),
            alpha=getattr(s, "alpha", None),
        )
