"""Multi-level cascade tracker.

Each call to :meth:`CascadeTracker.step` runs one frame:

1. predict box and score for every live track;
2. stage 1: high-confidence detections (``score >= tau_high``) against the
   confirmed tracks on the fused cost;
3. stage 2: low-confidence detections (``tau_low < score < tau_high``)
   against the confirmed tracks left over;
4. stage 3: still-unmatched high-confidence detections against the
   still-unmatched confirmed tracks' last observed boxes, then the rest
   against the tentative tracks' last observed boxes;
5. age unmatched tracks, birth new tracks from leftover high-confidence
   detections, drop tentative tracks unobserved for more than
   ``tentative_max_age`` frames and any track unobserved for more than
   ``max_age`` frames.

Every stage accepts a match only when its similarity exceeds the metric's
acceptance threshold (``tau_iou`` for FishIoU, ``tau_iou_baseline`` for the
IoU family); pairs at or below it never enter the assignment.  Detections
with ``score <= tau_low`` are dropped.
"""
from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from sutrack.association.cost import CascadeStage, build_cost, embedding_dimension
from sutrack.association.hungarian import hungarian
from sutrack.association.lifecycle import TrackStatus
from sutrack.association.track import Track, TrackOutput
from sutrack.schema.config import TrackerConfig
from sutrack.schema.errors import SequencingError

if TYPE_CHECKING:
    from sutrack.association.detection import Detection

logger = logging.getLogger(__name__)

_INFEASIBLE = -1e6


@dataclass
class TrackerStats:
    """Running counters of one tracker instance."""

    frames: int = 0
    born: int = 0
    removed: int = 0
    matches_by_stage: dict[CascadeStage, int] = field(
        default_factory=lambda: {stage: 0 for stage in CascadeStage}
    )
    emitted_ids: set[int] = field(default_factory=set)

    @property
    def emitted(self) -> int:
        return len(self.emitted_ids)

    def as_dict(self) -> dict[str, int]:
        return {
            "frames": self.frames,
            "born": self.born,
            "removed": self.removed,
            "emitted": self.emitted,
            "stage1_matches": self.matches_by_stage[CascadeStage.HIGH],
            "stage2_matches": self.matches_by_stage[CascadeStage.LOW],
            "stage3_matches": self.matches_by_stage[CascadeStage.LAST_CHANCE],
        }


class CascadeTracker:
    """Single-sequence tracker; frames must arrive in strictly increasing order.

    Parameters
    ----------
    config:
        Thresholds, lifecycle limits and filter settings.  Defaults apply
        when omitted.

    Example
    -------
    ::

        tracker = CascadeTracker()
        for frame, detections in stream:
            for output in tracker.step(frame, detections):
                print(output.track_id, output.box)
    """

    def __init__(self, config: TrackerConfig | None = None) -> None:
        self._config = config or TrackerConfig()
        self._tracks: list[Track] = []
        self._next_id = 1
        self._last_frame: int | None = None
        self._frame_count = 0
        self._warned_embeddings = False
        self.stats = TrackerStats()

    @property
    def config(self) -> TrackerConfig:
        return self._config

    @property
    def tracks(self) -> list[Track]:
        """Live tracks, in birth order."""
        return list(self._tracks)

    @property
    def frame_count(self) -> int:
        return self._frame_count

    def step(self, frame: int, detections: Sequence[Detection]) -> list[TrackOutput]:
        """Process one frame and return the confirmed tracks observed on it."""
        if frame < 1:
            raise SequencingError(
                f"Frame indices start at 1, got {frame}", context={"frame": frame}
            )
        if self._last_frame is not None and frame <= self._last_frame:
            raise SequencingError(
                f"Frame {frame} presented after frame {self._last_frame}",
                context={"frame": frame, "previous": self._last_frame},
            )
        dt = 1 if self._last_frame is None else frame - self._last_frame
        self._last_frame = frame
        self._frame_count += 1
        self.stats.frames += 1

        self._check_embeddings(detections)
        cfg = self._config
        high = [d for d in detections if d.score >= cfg.tau_high]
        low = [d for d in detections if cfg.tau_low < d.score < cfg.tau_high]

        for track in self._tracks:
            track.predict(float(dt))

        confirmed = self._indices(TrackStatus.CONFIRMED)
        tentative = self._indices(TrackStatus.TENTATIVE)

        # Stage 1
        high_left, confirmed = self._associate(high, confirmed, CascadeStage.HIGH)
        # Stage 2
        _, confirmed = self._associate(low, confirmed, CascadeStage.LOW)
        # Stage 3
        high_left, confirmed = self._associate(high_left, confirmed, CascadeStage.LAST_CHANCE)
        high_left, tentative = self._associate(high_left, tentative, CascadeStage.LAST_CHANCE)

        for index in (*confirmed, *tentative):
            self._tracks[index].mark_missed(dt)
        for detection in high_left:
            self._birth(detection)

        self._confirm_ready()
        self._remove_stale()
        return self._emit(frame)

    def _indices(self, status: TrackStatus) -> list[int]:
        return [i for i, track in enumerate(self._tracks) if track.status is status]

    def _associate(
        self,
        detections: list[Detection],
        track_indices: list[int],
        stage: CascadeStage,
    ) -> tuple[list[Detection], list[int]]:
        """Run one cascade stage; returns the unmatched detections and track indices."""
        if not detections or not track_indices:
            return detections, track_indices
        tracks = [self._tracks[i] for i in track_indices]
        cost = build_cost(detections, tracks, self._config, stage)
        feasible = cost > self._config.acceptance_threshold
        if not feasible.any():
            return detections, track_indices
        assignment = hungarian(np.where(feasible, cost, _INFEASIBLE))

        used_dets: set[int] = set()
        used_tracks: set[int] = set()
        for row, col in assignment.matches:
            if not feasible[row, col]:
                continue
            track_index = track_indices[col]
            self._tracks[track_index].update(detections[row])
            used_dets.add(row)
            used_tracks.add(col)
        self.stats.matches_by_stage[stage] += len(used_dets)
        logger.debug("Stage %d: %d matches", stage.value, len(used_dets))
        return (
            [d for i, d in enumerate(detections) if i not in used_dets],
            [t for j, t in enumerate(track_indices) if j not in used_tracks],
        )

    def _birth(self, detection: Detection) -> None:
        track = Track(self._next_id, detection, self._config)
        logger.debug("Track %d born at %s", track.track_id, detection.box)
        self._tracks.append(track)
        self._next_id += 1
        self.stats.born += 1

    def _confirm_ready(self) -> None:
        warm_up = self._frame_count <= self._config.min_hits
        for track in self._tracks:
            if track.status is not TrackStatus.TENTATIVE or track.time_since_update > 0:
                continue
            if track.hit_streak >= self._config.min_hits or warm_up:
                track.lifecycle.confirm()

    def _remove_stale(self) -> None:
        kept: list[Track] = []
        for track in self._tracks:
            limit = self._config.max_age
            if track.status is TrackStatus.TENTATIVE:
                limit = min(limit, self._config.tentative_max_age)
            if track.time_since_update > limit:
                track.lifecycle.remove()
                self.stats.removed += 1
                logger.debug(
                    "Track %d removed after %d missed frames",
                    track.track_id,
                    track.time_since_update,
                )
            else:
                kept.append(track)
        self._tracks = kept

    def _emit(self, frame: int) -> list[TrackOutput]:
        outputs: list[TrackOutput] = []
        min_overlap = self._config.output_min_iou
        for track in self._tracks:
            if track.status is TrackStatus.CONFIRMED and track.time_since_update == 0:
                outputs.append(
                    TrackOutput(frame, track.track_id, track.output_box(min_overlap), track.score)
                )
                self.stats.emitted_ids.add(track.track_id)
        outputs.sort(key=lambda o: o.track_id)
        return outputs

    def _check_embeddings(self, detections: Sequence[Detection]) -> None:
        if embedding_dimension(detections) is None:
            return
        if not self._config.reid_enabled and not self._warned_embeddings:
            logger.warning("Detections carry embeddings but Re-ID is disabled; ignoring them")
            self._warned_embeddings = True


def track_sequence(
    frames: Mapping[int, Sequence[Detection]],
    config: TrackerConfig | None = None,
    *,
    last_frame: int | None = None,
) -> tuple[list[TrackOutput], TrackerStats]:
    """Track a whole sequence given detections keyed by frame index.

    Frames between 1 and ``last_frame`` (default: the largest key) with no
    entry are processed as empty frames.
    """
    tracker = CascadeTracker(config)
    outputs: list[TrackOutput] = []
    end = max(frames, default=0) if last_frame is None else last_frame
    for frame in range(1, end + 1):
        outputs.extend(tracker.step(frame, frames.get(frame, ())))
    logger.info(
        "Tracked %d frames: %d tracks born, %d emitted",
        tracker.stats.frames,
        tracker.stats.born,
        tracker.stats.emitted,
    )
    return outputs, tracker.stats
