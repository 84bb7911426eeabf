"""Unit tests for sutrack.metrics."""
from __future__ import annotations

import itertools

import numpy as np
import pytest

from sutrack.association.track import TrackOutput
from sutrack.geometry.box import BoundingBox
from sutrack.geometry.similarity import iou
from sutrack.metrics.clear import clear_metrics
from sutrack.metrics.identity import IdentityMetrics, id_metrics, overlap_counts
from sutrack.metrics.report import REPORT_COLUMNS, EvalReport, evaluate
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.schema.errors import InputFormatError

G = BoundingBox.from_xywh(0.0, 0.0, 10.0, 10.0)


def _single_track(
    frames: range | list[int], identity_at: dict[int, int] | None = None
) -> TrajectorySet:
    trajectories = TrajectorySet()
    for frame in frames:
        identity = (identity_at or {}).get(frame, 1)
        trajectories.add(frame, identity, G.translated(float(frame), 0.0))
    return trajectories


def _brute_force_idtp(gt: TrajectorySet, pred: TrajectorySet, threshold: float) -> int:
    gt_ids, pred_ids = gt.identities(), pred.identities()
    counts = {(g, p): 0 for g in gt_ids for p in pred_ids}
    for frame in gt.frames():
        for g_entry in gt.entries(frame):
            for p_entry in pred.entries(frame):
                if iou(g_entry.box, p_entry.box) >= threshold:
                    counts[g_entry.identity, p_entry.identity] += 1
    size = max(len(gt_ids), len(pred_ids))
    padded_gt = gt_ids + [None] * (size - len(gt_ids))
    best = 0
    for perm in itertools.permutations(pred_ids + [None] * (size - len(pred_ids))):
        total = sum(
            counts[g, p] for g, p in zip(padded_gt, perm) if g is not None and p is not None
        )
        best = max(best, total)
    return best


# ---------------------------------------------------------------------------
# TrajectorySet
# ---------------------------------------------------------------------------


class TestTrajectorySet:
    def test_entries_sorted_by_identity(self) -> None:
        trajectories = TrajectorySet()
        trajectories.add(1, 5, G)
        trajectories.add(1, 2, G)
        assert [e.identity for e in trajectories.entries(1)] == [2, 5]
        assert trajectories.entries(9) == []

    def test_duplicate_identity_in_frame_rejected(self) -> None:
        trajectories = TrajectorySet()
        trajectories.add(1, 1, G)
        with pytest.raises(InputFormatError, match="twice"):
            trajectories.add(1, 1, G)

    def test_frame_zero_rejected(self) -> None:
        with pytest.raises(InputFormatError):
            TrajectorySet().add(0, 1, G)

    def test_grouping_and_counts(self, two_fish_gt: TrajectorySet) -> None:
        assert len(two_fish_gt) == 20
        assert two_fish_gt.frames() == list(range(1, 11))
        assert two_fish_gt.identities() == [1, 2]
        grouped = two_fish_gt.by_identity()
        assert sorted(grouped[2]) == list(range(1, 11))

    def test_relabeled(self, two_fish_gt: TrajectorySet) -> None:
        swapped = two_fish_gt.relabeled({1: 2, 2: 1})
        assert swapped.entries(1)[0].box == two_fish_gt.entries(1)[1].box
        assert swapped != two_fish_gt

    def test_from_outputs(self) -> None:
        outputs = [TrackOutput(1, 3, G, 0.5), TrackOutput(2, 3, G, 0.6)]
        trajectories = TrajectorySet.from_outputs(outputs)
        assert [(f, e.identity, e.score) for f, e in trajectories] == [(1, 3, 0.5), (2, 3, 0.6)]

    def test_is_close(self, two_fish_gt: TrajectorySet) -> None:
        nudged = TrajectorySet()
        for frame, entry in two_fish_gt:
            nudged.add(frame, entry.identity, entry.box.translated(1e-9, 0.0))
        assert two_fish_gt.is_close(nudged)
        assert not two_fish_gt.is_close(two_fish_gt.relabeled({1: 3}))

    def test_equality(self, two_fish_gt: TrajectorySet) -> None:
        assert two_fish_gt == two_fish_gt.relabeled({})


# ---------------------------------------------------------------------------
# CLEAR
# ---------------------------------------------------------------------------


class TestClearMetrics:
    def test_perfect_prediction(self, two_fish_gt: TrajectorySet) -> None:
        metrics = clear_metrics(two_fish_gt, two_fish_gt)
        assert metrics.mota == 1.0
        assert (metrics.fp, metrics.fn, metrics.idsw, metrics.frag) == (0, 0, 0, 0)
        assert metrics.motp == pytest.approx(1.0)

    def test_empty_prediction(self, two_fish_gt: TrajectorySet) -> None:
        metrics = clear_metrics(two_fish_gt, TrajectorySet())
        assert metrics.fn == 20
        assert metrics.mota == 0.0
        assert metrics.motp == 0.0

    def test_single_identity_switch(self) -> None:
        gt = _single_track(range(1, 11))
        pred = _single_track(range(1, 11), {f: 2 for f in range(6, 11)})
        metrics = clear_metrics(gt, pred)
        assert metrics.idsw == 1
        assert metrics.mota == pytest.approx(0.9)
        assert metrics.frag == 0

    def test_fragmentation(self) -> None:
        gt = _single_track(range(1, 11))
        pred = _single_track([f for f in range(1, 11) if f not in (4, 5)])
        metrics = clear_metrics(gt, pred)
        assert metrics.fn == 2
        assert metrics.frag == 1
        assert metrics.idsw == 0

    def test_false_positives(self) -> None:
        gt = _single_track(range(1, 4))
        pred = _single_track(range(1, 4))
        pred.add(2, 9, BoundingBox.from_xywh(500.0, 500.0, 10.0, 10.0))
        metrics = clear_metrics(gt, pred)
        assert metrics.fp == 1
        assert metrics.mota == pytest.approx(1.0 - 1.0 / 3.0)

    def test_previous_match_kept_while_overlapping(self) -> None:
        gt = TrajectorySet()
        pred = TrajectorySet()
        for frame in (1, 2):
            gt.add(frame, 1, G)
        pred.add(1, 1, G)
        pred.add(2, 1, G.translated(2.0, 0.0))
        pred.add(2, 2, G)
        metrics = clear_metrics(gt, pred)
        assert metrics.idsw == 0
        assert metrics.fp == 1

    def test_below_threshold_is_miss(self) -> None:
        gt = _single_track(range(1, 2))
        pred = TrajectorySet()
        pred.add(1, 1, G.translated(8.0, 0.0))
        metrics = clear_metrics(gt, pred)
        assert (metrics.matches, metrics.fn, metrics.fp) == (0, 1, 1)

    def test_motp_is_mean_iou(self) -> None:
        gt = _single_track(range(1, 2))
        pred = TrajectorySet()
        pred.add(1, 1, G.translated(2.0, 0.0))
        # gt sits at G shifted by 1: overlap 9x10, union 110
        assert clear_metrics(gt, pred).motp == pytest.approx(90.0 / 110.0)

    @pytest.mark.parametrize("threshold", [0.0, 1.0, 1.5])
    def test_threshold_validated(self, threshold: float) -> None:
        with pytest.raises(ValueError, match="iou_threshold"):
            clear_metrics(TrajectorySet(), TrajectorySet(), threshold)


# ---------------------------------------------------------------------------
# Identity
# ---------------------------------------------------------------------------


class TestIdentityMetrics:
    def test_perfect_prediction(self, two_fish_gt: TrajectorySet) -> None:
        metrics = id_metrics(two_fish_gt, two_fish_gt)
        assert metrics.idf1 == 1.0
        assert (metrics.idfp, metrics.idfn) == (0, 0)

    def test_label_invariant(self, two_fish_gt: TrajectorySet) -> None:
        relabeled = two_fish_gt.relabeled({1: 40, 2: 17})
        assert id_metrics(two_fish_gt, relabeled).idf1 == 1.0

    def test_split_track(self) -> None:
        gt = _single_track(range(1, 11))
        pred = _single_track(range(1, 11), {f: 2 for f in range(6, 11)})
        metrics = id_metrics(gt, pred)
        assert (metrics.idtp, metrics.idfn, metrics.idfp) == (5, 5, 5)
        assert metrics.idf1 == pytest.approx(0.5)

    def test_empty_sets(self) -> None:
        metrics = id_metrics(TrajectorySet(), TrajectorySet())
        assert (metrics.idf1, metrics.idp, metrics.idr) == (1.0, 1.0, 1.0)

    def test_empty_prediction(self, two_fish_gt: TrajectorySet) -> None:
        metrics = id_metrics(two_fish_gt, TrajectorySet())
        assert metrics.idtp == 0
        assert metrics.idfn == 20
        assert metrics.idf1 == 0.0
        assert metrics.idp == 1.0

    def test_ratios(self) -> None:
        metrics = IdentityMetrics(idtp=6, idfp=2, idfn=4)
        assert metrics.idp == pytest.approx(0.75)
        assert metrics.idr == pytest.approx(0.6)
        assert metrics.idf1 == pytest.approx(12.0 / 18.0)

    def test_overlap_counts(self, two_fish_gt: TrajectorySet) -> None:
        gt_ids, pred_ids, counts = overlap_counts(two_fish_gt, two_fish_gt.relabeled({1: 7}))
        assert gt_ids == [1, 2]
        assert pred_ids == [2, 7]
        np.testing.assert_array_equal(counts, [[0, 10], [10, 0]])

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_exhaustive_correspondence(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        lanes = [BoundingBox.from_xywh(0.0, 50.0 * k, 10.0, 10.0) for k in range(3)]
        gt = TrajectorySet()
        pred = TrajectorySet()
        for frame in range(1, 13):
            labels = rng.permutation([1, 2, 3, 4])[:3]
            for k, lane in enumerate(lanes):
                gt.add(frame, k + 1, lane)
                if rng.random() < 0.85:
                    pred.add(frame, int(labels[k]), lane.translated(rng.uniform(-3, 3), 0.0))
        assert id_metrics(gt, pred).idtp == _brute_force_idtp(gt, pred, 0.5)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


class TestEvalReport:
    def test_row_has_every_column(self, two_fish_gt: TrajectorySet) -> None:
        row = evaluate(two_fish_gt, two_fish_gt).as_row()
        assert tuple(row) == REPORT_COLUMNS
        assert row["GT"] == 20
        assert row["IDF1"] == 1.0

    def test_combine_sums_counts(self) -> None:
        gt = _single_track(range(1, 11))
        split = _single_track(range(1, 11), {f: 2 for f in range(6, 11)})
        combined = EvalReport.combine([evaluate(gt, gt), evaluate(gt, split)])
        assert combined.gt_count == 20
        assert combined.idsw == 1
        assert combined.idtp == 15
        assert combined.mota == pytest.approx(1.0 - 1.0 / 20.0)
        assert combined.idf1 == pytest.approx(30.0 / 40.0)

    def test_combine_nothing(self) -> None:
        combined = EvalReport.combine([])
        assert combined.gt_count == 0
        assert combined.mota == 1.0
