"""Ablation studies over simulated sequences."""
from __future__ import annotations

from sutrack.experiments.ablation import (
    ASSOCIATION_VARIANTS,
    MOTION_VARIANTS,
    AblationKind,
    AblationRow,
    one_step_prediction_rmse,
    run_ablation,
    run_variant,
    summarize,
)

__all__ = [
    "ASSOCIATION_VARIANTS",
    "MOTION_VARIANTS",
    "AblationKind",
    "AblationRow",
    "one_step_prediction_rmse",
    "run_ablation",
    "run_variant",
    "summarize",
]
