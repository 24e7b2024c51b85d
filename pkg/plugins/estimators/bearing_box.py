"""Bearing-box estimator -- 3D box measurements for a target of any kind.

Estimates position, velocity and the scale alpha = l1 of a constant-velocity
target from the world pseudo-measurement T_bar.
"""

from __future__ import annotations

import numpy as np

from core.models.states import COMMON_LABELS, CommonState, FilterInit
from core.protocols import TargetTruth
from filters.plkf import predict_common, update_common
from plugins.estimators.base import FilterEstimator

PLUGIN_META = {
    "name": "bearing-box",
    "display_name": "Bearing-Box",
    "description": "Pseudo-linear KF on (p, v, alpha) from 3D box detections",
    "category": "estimator",
    "class_name": "BearingBoxEstimator",
    "state_dim": 7,
    "requires_attitude": False,
}


class BearingBoxEstimator(FilterEstimator[CommonState]):
    """Constant-velocity bearing-box filter on the 7-dim common state."""

    name = "bearing-box"
    labels = COMMON_LABELS
    predict_fn = predict_common
    update_fn = update_common

    def initial_state(self, init: FilterInit) -> CommonState:
        return CommonState(
            p=np.array(init.p0, dtype=float),
            v=np.array(init.v0, dtype=float),
            alpha=init.alpha0,
            cov=init.covariance(COMMON_LABELS),
        )

    def truth_vector(self, truth: TargetTruth) -> np.ndarray:
        return np.concatenate([truth.position, truth.velocity, [truth.alpha]])
