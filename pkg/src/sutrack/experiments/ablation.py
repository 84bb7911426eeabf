"""Motion-model and association-metric ablations on simulated sequences.

Each run simulates ground truth for one seed, corrupts it into detections,
tracks them with one variant of the tracker config and evaluates the output.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Literal, get_args

import numpy as np

from sutrack.association.tracker import track_sequence
from sutrack.metrics.report import evaluate
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.motion.filters import make_box_filter
from sutrack.schema.config import AssociationMetricName, MotionModelName, TrackerConfig
from sutrack.sim.corruption import corrupt
from sutrack.sim.simulator import simulate

if TYPE_CHECKING:
    from sutrack.schema.config import SimParams, UkfSettings

logger = logging.getLogger(__name__)

AblationKind = Literal["motion", "association"]

MOTION_VARIANTS: tuple[MotionModelName, ...] = get_args(MotionModelName)
ASSOCIATION_VARIANTS: tuple[AssociationMetricName, ...] = get_args(AssociationMetricName)
PREDICTION_WARMUP = 2


@dataclass(frozen=True)
class AblationRow:
    """Scores of one variant on one seed."""

    kind: str
    variant: str
    seed: int
    mota: float
    idf1: float
    idsw: int
    frag: int
    prediction_rmse: float

    def as_dict(self) -> dict[str, object]:
        return asdict(self)


def one_step_prediction_rmse(
    ground_truth: TrajectorySet,
    motion_model: MotionModelName,
    settings: UkfSettings,
    *,
    warmup: int = PREDICTION_WARMUP,
) -> float:
    """RMSE of predicted box centers one frame ahead, fed with exact gt boxes.

    Each identity gets its own filter; predictions made before *warmup*
    observations are not scored.  Returns ``nan`` when nothing was scored.
    """
    squared: list[float] = []
    for track in ground_truth.by_identity().values():
        frames = sorted(track)
        box_filter = make_box_filter(track[frames[0]].box, motion_model, settings)
        seen = 1
        for previous, frame in zip(frames, frames[1:]):
            predicted = box_filter.predict(float(frame - previous))
            truth = track[frame].box
            if seen >= warmup:
                (px, py), (tx, ty) = predicted.center, truth.center
                squared.append((px - tx) ** 2 + (py - ty) ** 2)
            box_filter.update(truth)
            seen += 1
    return math.sqrt(float(np.mean(squared))) if squared else math.nan


def run_variant(
    kind: AblationKind,
    variant: str,
    seed: int,
    sim_params: SimParams,
    tracker_config: TrackerConfig,
) -> AblationRow:
    params = sim_params.model_copy(update={"seed": seed})
    field_name = "motion_model" if kind == "motion" else "association_metric"
    config = TrackerConfig.model_validate({**tracker_config.model_dump(), field_name: variant})

    ground_truth = simulate(params)
    detections = corrupt(ground_truth, params)
    outputs, _ = track_sequence(detections, config, last_frame=params.n_frames)
    report = evaluate(ground_truth, TrajectorySet.from_outputs(outputs))
    rmse = (
        one_step_prediction_rmse(ground_truth, config.motion_model, config.ukf_params)
        if kind == "motion"
        else math.nan
    )
    logger.info(
        "%s=%s seed=%d: MOTA %.4f IDF1 %.4f IDSW %d",
        kind,
        variant,
        seed,
        report.mota,
        report.idf1,
        report.idsw,
    )
    return AblationRow(
        kind=kind,
        variant=variant,
        seed=seed,
        mota=report.mota,
        idf1=report.idf1,
        idsw=report.idsw,
        frag=report.frag,
        prediction_rmse=rmse,
    )


def run_ablation(
    kind: AblationKind,
    sim_params: SimParams,
    tracker_config: TrackerConfig | None = None,
    seeds: Sequence[int] = (0, 1, 2, 3, 4),
    variants: Sequence[str] | None = None,
) -> list[AblationRow]:
    """Every variant of *kind* on every seed, ordered by variant then seed."""
    tracker_config = tracker_config or TrackerConfig()
    if variants is None:
        variants = MOTION_VARIANTS if kind == "motion" else ASSOCIATION_VARIANTS
    return [
        run_variant(kind, variant, seed, sim_params, tracker_config)
        for variant in variants
        for seed in seeds
    ]


def summarize(rows: Iterable[AblationRow]) -> dict[str, dict[str, float]]:
    """Per-variant means of every score column."""
    grouped: dict[str, list[AblationRow]] = {}
    for row in rows:
        grouped.setdefault(row.variant, []).append(row)
    return {
        variant: {
            "mota": float(np.mean([r.mota for r in group])),
            "idf1": float(np.mean([r.idf1 for r in group])),
            "idsw": float(np.mean([r.idsw for r in group])),
            "frag": float(np.mean([r.frag for r in group])),
            "prediction_rmse": float(np.mean([r.prediction_rmse for r in group])),
        }
        for variant, group in grouped.items()
    }
