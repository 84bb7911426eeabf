"""Persistent track identity."""
from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from sutrack.association.lifecycle import TrackLifecycle, TrackStatus
from sutrack.geometry.similarity import iou
from sutrack.motion.filters import make_box_filter
from sutrack.motion.score import ScoreFilter

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.association.detection import Detection
    from sutrack.geometry.box import BoundingBox
    from sutrack.motion.ukf import StateEstimate
    from sutrack.schema.config import TrackerConfig


class TrackOutput(NamedTuple):
    """One emitted ``(frame, id, box, score)`` row."""

    frame: int
    track_id: int
    box: BoundingBox
    score: float


class Track:
    """A tracked target: motion filter, score filter, appearance and counters."""

    def __init__(self, track_id: int, detection: Detection, config: TrackerConfig) -> None:
        self.track_id = track_id
        self.motion = make_box_filter(detection.box, config.motion_model, config.ukf_params)
        self.score_filter = ScoreFilter(detection.score)
        self.lifecycle = TrackLifecycle(track_id)
        self.last_observation: BoundingBox = detection.box
        self.smoothed_embedding: NDArray[np.float64] | None = detection.embedding
        self.predicted_box: BoundingBox = detection.box
        self.predicted_score: float = detection.score
        self.time_since_update = 0
        self.hit_streak = 1
        self._momentum = config.embedding_momentum

    @property
    def status(self) -> TrackStatus:
        return self.lifecycle.status

    @property
    def estimate(self) -> StateEstimate:
        return self.motion.estimate

    @property
    def box(self) -> BoundingBox:
        return self.motion.box

    @property
    def score(self) -> float:
        return self.score_filter.score

    def output_box(self, min_overlap: float) -> BoundingBox:
        """Filtered box, or the last observation when their IoU is below *min_overlap*."""
        filtered = self.motion.box
        if iou(filtered, self.last_observation) < min_overlap:
            return self.last_observation
        return filtered

    def predict(self, dt: float = 1.0) -> BoundingBox:
        """Predict box and score for the coming frame."""
        if self.time_since_update > 0:
            self.hit_streak = 0
        self.predicted_box = self.motion.predict(dt)
        self.predicted_score = self.score_filter.predict()
        return self.predicted_box

    def update(self, detection: Detection) -> None:
        self.motion.update(detection.box)
        self.score_filter.update(detection.score)
        self.last_observation = detection.box
        self.time_since_update = 0
        self.hit_streak += 1
        if detection.embedding is not None:
            self._blend_embedding(detection.embedding)

    def mark_missed(self, frames: int = 1) -> None:
        self.time_since_update += frames

    def _blend_embedding(self, embedding: NDArray[np.float64]) -> None:
        if self.smoothed_embedding is None or self.smoothed_embedding.shape != embedding.shape:
            self.smoothed_embedding = embedding
            return
        blended = self._momentum * self.smoothed_embedding + (1.0 - self._momentum) * embedding
        norm = float(np.linalg.norm(blended))
        self.smoothed_embedding = blended / norm if norm > 0.0 else embedding

    def __repr__(self) -> str:
        return (
            f"Track(id={self.track_id}, status={self.status.value!r}, "
            f"time_since_update={self.time_since_update}, hit_streak={self.hit_streak})"
        )
