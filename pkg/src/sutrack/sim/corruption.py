"""Detector model: turns ground truth into scored, noisy detections."""
from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

from sutrack.association.detection import Detection
from sutrack.geometry.box import BoundingBox
from sutrack.sim.rng import spawn_generators
from sutrack.sim.simulator import draw_body

if TYPE_CHECKING:
    import numpy as np

    from sutrack.metrics.trajectory import TrajectoryEntry, TrajectorySet
    from sutrack.schema.config import SimParams

logger = logging.getLogger(__name__)

MIN_JITTERED_SIDE = 1.0


def _clamped_score(generator: np.random.Generator, mean: float, sigma: float) -> float:
    return min(max(mean + sigma * generator.standard_normal(), 0.0), 1.0)


def _jittered(
    entry: TrajectoryEntry, generator: np.random.Generator, params: SimParams
) -> BoundingBox:
    dx, dy, sw, sh = generator.standard_normal(4)
    if params.center_jitter_sigma == 0.0 and params.size_jitter_sigma == 0.0:
        return entry.box
    cx, cy = entry.box.center
    width = max(entry.box.width * (1.0 + params.size_jitter_sigma * sw), MIN_JITTERED_SIDE)
    height = max(entry.box.height * (1.0 + params.size_jitter_sigma * sh), MIN_JITTERED_SIDE)
    return BoundingBox.from_center(
        cx + params.center_jitter_sigma * dx,
        cy + params.center_jitter_sigma * dy,
        width,
        height,
    )


def _false_positive(generator: np.random.Generator, params: SimParams) -> Detection:
    area, aspect = draw_body(generator, params)
    width = math.sqrt(area * aspect)
    height = math.sqrt(area / aspect)
    cx = generator.uniform(0.0, params.arena_width)
    cy = generator.uniform(0.0, params.arena_height)
    box = BoundingBox.from_center(cx, cy, width, height)
    return Detection(box, _clamped_score(generator, params.fp_score_mean, params.fp_score_sigma))


def corrupt(ground_truth: TrajectorySet, params: SimParams) -> dict[int, list[Detection]]:
    """Per-frame detections for every frame ``1..n_frames``.

    Each gt box is dropped with ``miss_probability``, otherwise jittered and
    scored; ``Poisson(false_positive_rate)`` false positives are appended to
    every frame.  With all noise off the detections are the gt boxes in gt
    order.
    """
    _, generator = spawn_generators(params)
    last_frame = max([params.n_frames, *ground_truth.frames()])
    detections: dict[int, list[Detection]] = {}
    dropped = kept = 0

    for frame in range(1, last_frame + 1):
        frame_detections: list[Detection] = []
        for entry in ground_truth.entries(frame):
            if generator.random() < params.miss_probability:
                dropped += 1
                continue
            box = _jittered(entry, generator, params)
            score = _clamped_score(generator, params.score_mean, params.score_sigma)
            frame_detections.append(Detection(box, score))
            kept += 1
        if params.false_positive_rate > 0.0:
            for _ in range(int(generator.poisson(params.false_positive_rate))):
                frame_detections.append(_false_positive(generator, params))
        detections[frame] = frame_detections

    logger.debug("Detector model kept %d boxes and dropped %d", kept, dropped)
    return detections
