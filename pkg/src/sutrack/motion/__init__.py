"""Motion estimation: UKF over a CTRV state, linear KF baseline, score filter."""
from __future__ import annotations

from sutrack.motion.ctrv import MotionState, ctrv_transition, measure, wrap_angle
from sutrack.motion.filters import (
    BoxFilter,
    KalmanBoxFilter,
    UnscentedBoxFilter,
    make_box_filter,
)
from sutrack.motion.score import ScoreFilter, score_predict, score_update
from sutrack.motion.ukf import (
    MotionModel,
    SigmaSet,
    StateEstimate,
    UkfParams,
    generate_sigma_points,
    predict,
    psd_repair,
    update,
)

__all__ = [
    "BoxFilter",
    "KalmanBoxFilter",
    "MotionModel",
    "MotionState",
    "ScoreFilter",
    "SigmaSet",
    "StateEstimate",
    "UkfParams",
    "UnscentedBoxFilter",
    "ctrv_transition",
    "generate_sigma_points",
    "make_box_filter",
    "measure",
    "predict",
    "psd_repair",
    "score_predict",
    "score_update",
    "update",
]
