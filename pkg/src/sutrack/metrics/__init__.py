"""Tracking evaluation: CLEAR MOT and identity metrics."""
from __future__ import annotations

from sutrack.metrics.clear import DEFAULT_IOU_THRESHOLD, ClearMetrics, clear_metrics, match_frame
from sutrack.metrics.identity import IdentityMetrics, id_metrics, overlap_counts
from sutrack.metrics.report import REPORT_COLUMNS, EvalReport, evaluate
from sutrack.metrics.trajectory import TrajectoryEntry, TrajectorySet

__all__ = [
    "DEFAULT_IOU_THRESHOLD",
    "REPORT_COLUMNS",
    "ClearMetrics",
    "EvalReport",
    "IdentityMetrics",
    "TrajectoryEntry",
    "TrajectorySet",
    "clear_metrics",
    "evaluate",
    "id_metrics",
    "match_frame",
    "overlap_counts",
]
