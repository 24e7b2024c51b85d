"""Bearing-only baseline -- pseudo-linear KF on bearings alone.

Needs the observer to out-maneuver the target; with a stationary observer
the estimate drifts toward the camera.
"""

from __future__ import annotations

import numpy as np

from core.models.states import BEARING_LABELS, BearingState, FilterInit
from core.protocols import TargetTruth
from filters.plkf import predict_bearing, update_bearing_only
from plugins.estimators.base import FilterEstimator

PLUGIN_META = {
    "name": "bearing-only",
    "display_name": "Bearing-Only",
    "description": "Pseudo-linear KF on (p, v) from the bearing of the box center",
    "category": "estimator",
    "class_name": "BearingOnlyEstimator",
    "state_dim": 6,
    "requires_attitude": False,
}


class BearingOnlyEstimator(FilterEstimator[BearingState]):
    name = "bearing-only"
    labels = BEARING_LABELS
    predict_fn = predict_bearing
    update_fn = update_bearing_only

    def initial_state(self, init: FilterInit) -> BearingState:
        return BearingState(
            p=np.array(init.p0, dtype=float),
            v=np.array(init.v0, dtype=float),
            cov=init.covariance(BEARING_LABELS),
        )

    def truth_vector(self, truth: TargetTruth) -> np.ndarray:
        return np.concatenate([truth.position, truth.velocity])
