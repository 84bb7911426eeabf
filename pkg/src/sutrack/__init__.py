"""sutrack: multi-fish tracking by detection.

Unscented Kalman filtering over a constant turn-rate and velocity state,
FishIoU box association and a three-stage confidence cascade, plus CLEAR and
identity metrics and a synthetic fish-sequence simulator to evaluate them.

Public API
----------
The stable public surface is everything exported from this module.
Anything inside submodules not re-exported here is considered private
and may change without notice.

Quick-start
-----------
>>> import sutrack
>>> sutrack.__version__
'0.1.0'

>>> from sutrack import BoundingBox, fish_iou
>>> round(fish_iou(BoundingBox(0, 0, 10, 10), BoundingBox(0, 0, 10, 10)), 9)
1.6
"""
from __future__ import annotations

__version__: str = "0.1.0"

# ---------------------------------------------------------------------------
# Schema
# ---------------------------------------------------------------------------
from sutrack.schema.config import (
    FishIouParams,
    SimParams,
    SuTrackConfig,
    TrackerConfig,
    UkfSettings,
)
from sutrack.schema.errors import (
    ConfigurationError,
    ErrorSeverity,
    InputFormatError,
    InvalidBoxError,
    NumericalDegeneracyError,
    SequencingError,
    SuTrackError,
)

# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------
from sutrack.geometry.box import BoundingBox
from sutrack.geometry.similarity import (
    AssociationMetric,
    diou,
    fish_iou,
    giou,
    iou,
    pairwise_similarity,
)

# ---------------------------------------------------------------------------
# Motion
# ---------------------------------------------------------------------------
from sutrack.motion.filters import BoxFilter, KalmanBoxFilter, UnscentedBoxFilter
from sutrack.motion.score import ScoreFilter
from sutrack.motion.ukf import StateEstimate, UkfParams, predict, update

# ---------------------------------------------------------------------------
# Association
# ---------------------------------------------------------------------------
from sutrack.association.cost import CascadeStage, build_cost, embedding_similarity
from sutrack.association.detection import Detection
from sutrack.association.hungarian import hungarian
from sutrack.association.lifecycle import TrackStatus
from sutrack.association.track import Track, TrackOutput
from sutrack.association.tracker import CascadeTracker, TrackerStats, track_sequence

# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------
from sutrack.metrics.clear import clear_metrics
from sutrack.metrics.identity import id_metrics
from sutrack.metrics.report import EvalReport, evaluate
from sutrack.metrics.trajectory import TrajectorySet

# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------
from sutrack.sim.corruption import corrupt
from sutrack.sim.kinematics import KinematicStats, kinematic_stats
from sutrack.sim.simulator import simulate

# ---------------------------------------------------------------------------
# I/O and configuration
# ---------------------------------------------------------------------------
from sutrack.config.loader import ConfigLoader, load_config
from sutrack.io.bundle import SequenceBundle, load_bundle
from sutrack.io.embeddings import read_embeddings
from sutrack.io.mot import read_detections, read_gt, read_results, write_gt, write_results

__all__ = [
    "__version__",
    # schema
    "ConfigurationError",
    "ErrorSeverity",
    "FishIouParams",
    "InputFormatError",
    "InvalidBoxError",
    "NumericalDegeneracyError",
    "SequencingError",
    "SimParams",
    "SuTrackConfig",
    "SuTrackError",
    "TrackerConfig",
    "UkfSettings",
    # geometry
    "AssociationMetric",
    "BoundingBox",
    "diou",
    "fish_iou",
    "giou",
    "iou",
    "pairwise_similarity",
    # motion
    "BoxFilter",
    "KalmanBoxFilter",
    "ScoreFilter",
    "StateEstimate",
    "UkfParams",
    "UnscentedBoxFilter",
    "predict",
    "update",
    # association
    "CascadeStage",
    "CascadeTracker",
    "Detection",
    "Track",
    "TrackOutput",
    "TrackStatus",
    "TrackerStats",
    "build_cost",
    "embedding_similarity",
    "hungarian",
    "track_sequence",
    # metrics
    "EvalReport",
    "TrajectorySet",
    "clear_metrics",
    "evaluate",
    "id_metrics",
    # simulation
    "KinematicStats",
    "corrupt",
    "kinematic_stats",
    "simulate",
    # io
    "ConfigLoader",
    "SequenceBundle",
    "load_bundle",
    "load_config",
    "read_detections",
    "read_embeddings",
    "read_gt",
    "read_results",
    "write_gt",
    "write_results",
]
