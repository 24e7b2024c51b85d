"""Filters -- pseudo-linear Kalman predict/update steps for every state layout."""

from filters.plkf import (
    kalman_correct,
    kalman_gain,
    predict_bearing,
    predict_common,
    predict_mav,
    projector,
    update_bearing_angle,
    update_bearing_only,
    update_common,
    update_mav,
)

__all__ = [
    "kalman_correct",
    "kalman_gain",
    "predict_bearing",
    "predict_common",
    "predict_mav",
    "projector",
    "update_bearing_angle",
    "update_bearing_only",
    "update_common",
    "update_mav",
]
