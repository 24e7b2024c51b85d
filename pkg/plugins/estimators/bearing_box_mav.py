"""Bearing-box-MAV estimator -- 3D box plus thrust direction for multicopters.

The visible attitude gives the thrust direction h, which is collinear with
a - g e3. Projecting with P_h removes the unknown mass and thrust magnitude
and turns the attitude into a linear measurement of the acceleration.
"""

from __future__ import annotations

import numpy as np

from core.models.states import MAV_LABELS, FilterInit, MavState
from core.protocols import TargetTruth
from filters.plkf import predict_mav, update_mav
from plugins.estimators.base import FilterEstimator

PLUGIN_META = {
    "name": "bearing-box-mav",
    "display_name": "Bearing-Box MAV",
    "description": "Pseudo-linear KF on (p, v, a, alpha) using box and thrust direction",
    "category": "estimator",
    "class_name": "BearingBoxMavEstimator",
    "state_dim": 10,
    "requires_attitude": True,
}


class BearingBoxMavEstimator(FilterEstimator[MavState]):
    """Constant-acceleration bearing-box filter on the 10-dim MAV state."""

    name = "bearing-box-mav"
    labels = MAV_LABELS
    predict_fn = predict_mav
    update_fn = update_mav

    def initial_state(self, init: FilterInit) -> MavState:
        return MavState(
            p=np.array(init.p0, dtype=float),
            v=np.array(init.v0, dtype=float),
            a=np.array(init.a0, dtype=float),
            alpha=init.alpha0,
            cov=init.covariance(MAV_LABELS),
        )

    def truth_vector(self, truth: TargetTruth) -> np.ndarray:
        return np.concatenate([truth.position, truth.velocity, truth.acceleration, [truth.alpha]])
