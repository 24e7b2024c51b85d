"""Built-in estimators -- implementations of the Estimator protocol."""

from plugins.estimators import bearing_angle, bearing_box, bearing_box_mav, bearing_only
from plugins.estimators.bearing_angle import BearingAngleEstimator
from plugins.estimators.bearing_box import BearingBoxEstimator
from plugins.estimators.bearing_box_mav import BearingBoxMavEstimator
from plugins.estimators.bearing_only import BearingOnlyEstimator
from plugins.estimators.base import FilterEstimator

BUILTIN_ESTIMATORS = [
    (bearing_box.PLUGIN_META, BearingBoxEstimator),
    (bearing_box_mav.PLUGIN_META, BearingBoxMavEstimator),
    (bearing_only.PLUGIN_META, BearingOnlyEstimator),
    (bearing_angle.PLUGIN_META, BearingAngleEstimator),
]

__all__ = [
    "BUILTIN_ESTIMATORS",
    "BearingAngleEstimator",
    "BearingBoxEstimator",
    "BearingBoxMavEstimator",
    "BearingOnlyEstimator",
    "FilterEstimator",
]
