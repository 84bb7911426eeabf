"""Unit tests for sutrack.experiments.ablation."""
from __future__ import annotations

import math

import pytest

from sutrack.experiments import (
    ASSOCIATION_VARIANTS,
    MOTION_VARIANTS,
    AblationRow,
    one_step_prediction_rmse,
    run_ablation,
    run_variant,
    summarize,
)
from sutrack.geometry.box import BoundingBox
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.schema.config import SimParams, TrackerConfig, UkfSettings


def _row(variant: str, seed: int, mota: float, rmse: float = math.nan) -> AblationRow:
    return AblationRow(
        kind="motion",
        variant=variant,
        seed=seed,
        mota=mota,
        idf1=mota,
        idsw=seed,
        frag=0,
        prediction_rmse=rmse,
    )


def _circle(n_frames: int, radius: float = 100.0, omega: float = 0.1) -> TrajectorySet:
    trajectories = TrajectorySet()
    for frame in range(1, n_frames + 1):
        angle = omega * frame
        cx = 400.0 + radius * math.cos(angle)
        cy = 400.0 + radius * math.sin(angle)
        trajectories.add(frame, 1, BoundingBox.from_center(cx, cy, 20.0, 8.0))
    return trajectories


class TestVariants:
    def test_variant_names(self) -> None:
        assert MOTION_VARIANTS == ("ukf", "kf")
        assert ASSOCIATION_VARIANTS == ("fishiou", "iou", "giou", "diou")


# ---------------------------------------------------------------------------
# One-step prediction error
# ---------------------------------------------------------------------------


class TestPredictionRmse:
    def test_nothing_scored_is_nan(self) -> None:
        gt = TrajectorySet()
        gt.add(1, 1, BoundingBox(0.0, 0.0, 10.0, 10.0))
        assert math.isnan(one_step_prediction_rmse(gt, "ukf", UkfSettings()))

    def test_straight_line_settles(self) -> None:
        gt = TrajectorySet()
        for frame in range(1, 41):
            gt.add(frame, 1, BoundingBox.from_xywh(3.0 * frame, 50.0, 20.0, 8.0))
        assert one_step_prediction_rmse(gt, "ukf", UkfSettings(), warmup=10) < 1.0

    def test_turn_model_beats_constant_velocity_on_circle(self) -> None:
        gt = _circle(80)
        ukf_rmse = one_step_prediction_rmse(gt, "ukf", UkfSettings(), warmup=10)
        kf_rmse = one_step_prediction_rmse(gt, "kf", UkfSettings(), warmup=10)
        assert ukf_rmse < kf_rmse


# ---------------------------------------------------------------------------
# Runs
# ---------------------------------------------------------------------------


class TestRunVariant:
    def test_noise_free_motion_run(self, small_sim: SimParams) -> None:
        row = run_variant("motion", "ukf", 7, small_sim, TrackerConfig())
        assert (row.kind, row.variant, row.seed) == ("motion", "ukf", 7)
        assert row.mota > 0.9
        assert row.prediction_rmse >= 0.0

    def test_association_run_has_no_rmse(self, small_sim: SimParams) -> None:
        row = run_variant("association", "iou", 7, small_sim, TrackerConfig())
        assert math.isnan(row.prediction_rmse)
        assert 0.0 <= row.idf1 <= 1.0

    def test_as_dict(self, small_sim: SimParams) -> None:
        row = run_variant("association", "giou", 1, small_sim, TrackerConfig())
        assert set(row.as_dict()) == {
            "kind",
            "variant",
            "seed",
            "mota",
            "idf1",
            "idsw",
            "frag",
            "prediction_rmse",
        }


class TestRunAblation:
    def test_ordered_by_variant_then_seed(self, small_sim: SimParams) -> None:
        params = small_sim.model_copy(update={"n_frames": 10})
        rows = run_ablation("association", params, seeds=(3, 4), variants=("iou", "diou"))
        assert [(r.variant, r.seed) for r in rows] == [
            ("iou", 3),
            ("iou", 4),
            ("diou", 3),
            ("diou", 4),
        ]

    def test_defaults_cover_every_motion_variant(self, small_sim: SimParams) -> None:
        params = small_sim.model_copy(update={"n_frames": 8})
        rows = run_ablation("motion", params, seeds=(0,))
        assert [r.variant for r in rows] == list(MOTION_VARIANTS)


class TestSummarize:
    def test_means_per_variant(self) -> None:
        rows = [_row("ukf", 0, 0.8, 1.0), _row("ukf", 2, 0.6, 3.0), _row("kf", 1, 0.5)]
        summary = summarize(rows)
        assert list(summary) == ["ukf", "kf"]
        assert summary["ukf"]["mota"] == pytest.approx(0.7)
        assert summary["ukf"]["idsw"] == pytest.approx(1.0)
        assert summary["ukf"]["prediction_rmse"] == pytest.approx(2.0)
        assert math.isnan(summary["kf"]["prediction_rmse"])

    def test_empty(self) -> None:
        assert summarize([]) == {}
