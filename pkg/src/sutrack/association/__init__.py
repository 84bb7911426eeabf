"""Association: detections, tracks, cost construction and the cascade tracker."""
from __future__ import annotations

from sutrack.association.cost import (
    CascadeStage,
    CostMatrix,
    build_cost,
    embedding_dimension,
    embedding_similarity,
)
from sutrack.association.detection import Detection
from sutrack.association.hungarian import Assignment, hungarian
from sutrack.association.lifecycle import (
    TrackLifecycle,
    TrackStatus,
    TrackTransitionError,
)
from sutrack.association.track import Track, TrackOutput
from sutrack.association.tracker import CascadeTracker, TrackerStats, track_sequence

__all__ = [
    "Assignment",
    "CascadeStage",
    "CascadeTracker",
    "CostMatrix",
    "Detection",
    "Track",
    "TrackLifecycle",
    "TrackOutput",
    "TrackStatus",
    "TrackTransitionError",
    "TrackerStats",
    "build_cost",
    "embedding_dimension",
    "embedding_similarity",
    "hungarian",
    "track_sequence",
]
