"""Bearing-angle baseline -- bearing plus apparent angular size.

Assumes the target looks the same size from every viewpoint (a sphere of
diameter l), so p_c = p_o - (g / theta) l. The size state reuses the alpha
slot of the common layout.
"""

from __future__ import annotations

import numpy as np

from core.models.states import COMMON_LABELS, CommonState, FilterInit
from core.protocols import TargetTruth
from filters.plkf import predict_common, update_bearing_angle
from plugins.estimators.base import FilterEstimator

PLUGIN_META = {
    "name": "bearing-angle",
    "display_name": "Bearing-Angle",
    "description": "Pseudo-linear KF on (p, v, l) from bearing and angular size",
    "category": "estimator",
    "class_name": "BearingAngleEstimator",
    "state_dim": 7,
    "requires_attitude": False,
}


class BearingAngleEstimator(FilterEstimator[CommonState]):
    name = "bearing-angle"
    labels = COMMON_LABELS
    predict_fn = predict_common
    update_fn = update_bearing_angle

    def initial_state(self, init: FilterInit) -> CommonState:
        return CommonState(
            p=np.array(init.p0, dtype=float),
            v=np.array(init.v0, dtype=float),
            alpha=init.alpha0,
            cov=init.covariance(COMMON_LABELS),
        )

    def truth_vector(self, truth: TargetTruth) -> None:
        # the apparent size of a box has no single true value
        return None
