"""Unit tests for sutrack.io readers and writers."""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
import pytest

from sutrack.association.detection import Detection
from sutrack.association.track import TrackOutput
from sutrack.association.tracker import track_sequence
from sutrack.geometry.box import BoundingBox
from sutrack.io import (
    SequenceBundle,
    attach_embeddings,
    format_result,
    load_bundle,
    read_detections,
    read_embeddings,
    read_gt,
    read_results,
    write_detections,
    write_gt,
    write_results,
)
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.schema.config import TrackerConfig
from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from collections.abc import Callable
    from pathlib import Path

    DetectionFactory = Callable[..., Detection]


def _write(tmp_path: Path, name: str, text: str) -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Detections
# ---------------------------------------------------------------------------


class TestReadDetections:
    def test_parses_line_to_corner_box(self, tmp_path: Path) -> None:
        path = _write(tmp_path, "det.txt", "1,-1,10,20,30,40,0.9,-1,-1,-1\n")
        detections = read_detections(path)
        (detection,) = detections[1]
        assert detection.box == BoundingBox(10.0, 20.0, 40.0, 60.0)
        assert detection.score == pytest.approx(0.9)
        assert detection.embedding is None

    def test_frames_sorted_and_order_kept(self, tmp_path: Path) -> None:
        text = (
            "3,-1,0,0,5,5,0.5,-1,-1,-1\n"
            "1,-1,1,1,5,5,0.7,-1,-1,-1\n"
            "\n"
            "1,-1,2,2,5,5,0.2,-1,-1,-1\n"
        )
        detections = read_detections(_write(tmp_path, "det.txt", text))
        assert list(detections) == [1, 3]
        assert [d.score for d in detections[1]] == [0.7, 0.2]

    def test_empty_file_is_valid(self, tmp_path: Path) -> None:
        assert read_detections(_write(tmp_path, "det.txt", "")) == {}

    def test_wrong_field_count_names_line(self, tmp_path: Path) -> None:
        path = _write(tmp_path, "det.txt", "1,-1,10,20,30,40\n")
        with pytest.raises(InputFormatError, match=r"det\.txt:1: expected 10 fields, got 6"):
            read_detections(path)

    def test_error_reports_offending_line(self, tmp_path: Path) -> None:
        text = "1,-1,10,20,30,40,0.9,-1,-1,-1\n2,-1,abc,20,30,40,0.9,-1,-1,-1\n"
        with pytest.raises(InputFormatError, match=r":2: bb_left is not a number"):
            read_detections(_write(tmp_path, "det.txt", text))

    @pytest.mark.parametrize(
        ("line", "reason"),
        [
            ("0,-1,0,0,5,5,0.5,-1,-1,-1", "frame must be >= 1"),
            ("1,4,0,0,5,5,0.5,-1,-1,-1", "detection id must be -1"),
            ("1,-1,0,0,0,5,0.5,-1,-1,-1", "must be positive"),
            ("1,-1,0,0,5,5,1.5,-1,-1,-1", r"conf must lie in \[0, 1\]"),
            ("1,-1,0,0,5,inf,0.5,-1,-1,-1", "must be finite"),
            ("1.5,-1,0,0,5,5,0.5,-1,-1,-1", "must be an integer"),
        ],
    )
    def test_invalid_rows_rejected(self, tmp_path: Path, line: str, reason: str) -> None:
        with pytest.raises(InputFormatError, match=reason):
            read_detections(_write(tmp_path, "det.txt", line + "\n"))

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(InputFormatError, match="File not found") as info:
            read_detections(tmp_path / "nope.txt")
        assert "nope.txt" in str(info.value)

    def test_write_then_read(self, tmp_path: Path) -> None:
        detections = {
            1: [Detection(BoundingBox(0.1, 0.2, 10.3, 20.4), 0.33)],
            4: [Detection(BoundingBox(5.0, 5.0, 6.0, 7.0), 1.0)],
        }
        path = tmp_path / "det.txt"
        write_detections(detections, path)
        loaded = read_detections(path)
        assert list(loaded) == [1, 4]
        assert loaded[1][0].box.x2 == pytest.approx(10.3)
        assert loaded[4][0].score == 1.0


# ---------------------------------------------------------------------------
# Ground truth
# ---------------------------------------------------------------------------


class TestGroundTruth:
    def test_reads_row(self, tmp_path: Path) -> None:
        gt = read_gt(_write(tmp_path, "gt.txt", "5,3,0,0,10,10,1,1,1.0\n"))
        assert gt.frames() == [5]
        (entry,) = gt.entries(5)
        assert entry.identity == 3
        assert entry.box == BoundingBox(0.0, 0.0, 10.0, 10.0)

    def test_ignored_rows_skipped(self, tmp_path: Path) -> None:
        text = "1,1,0,0,10,10,0,1,1.0\n1,2,0,0,10,10,1,1,1.0\n"
        assert read_gt(_write(tmp_path, "gt.txt", text)).identities() == [2]

    def test_duplicate_identity_names_line(self, tmp_path: Path) -> None:
        text = "1,1,0,0,10,10,1,1,1.0\n1,1,5,5,10,10,1,1,1.0\n"
        with pytest.raises(InputFormatError, match=r"gt\.txt:2: .*twice"):
            read_gt(_write(tmp_path, "gt.txt", text))

    def test_write_then_read_is_close(self, tmp_path: Path, two_fish_gt: TrajectorySet) -> None:
        path = tmp_path / "gt.txt"
        write_gt(two_fish_gt, path)
        assert read_gt(path).is_close(two_fish_gt)
        assert path.read_text().splitlines()[0] == "1,1,12.0,10.0,20.0,10.0,1,1,1.0"


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


class TestResults:
    def test_format_result_line(self) -> None:
        output = TrackOutput(1, 1, BoundingBox(0.0, 0.0, 10.0, 10.0), 0.9)
        assert format_result(output) == "1,1,0.00,0.00,10.00,10.00,0.9000,-1,-1,-1"

    def test_negative_zero_normalized(self) -> None:
        output = TrackOutput(2, 7, BoundingBox(-0.001, 3.456, 9.999, 10.0), 0.12346)
        assert format_result(output) == "2,7,0.00,3.46,10.00,6.54,0.1235,-1,-1,-1"

    def test_sorted_by_frame_then_identity(self, tmp_path: Path) -> None:
        box = BoundingBox(0.0, 0.0, 4.0, 4.0)
        outputs = [TrackOutput(2, 1, box, 0.5), TrackOutput(1, 9, box, 0.5)]
        outputs.append(TrackOutput(1, 2, box, 0.5))
        path = tmp_path / "res.txt"
        write_results(outputs, path)
        keys = [tuple(line.split(",")[:2]) for line in path.read_text().splitlines()]
        assert keys == [("1", "2"), ("1", "9"), ("2", "1")]

    def test_empty_results_give_empty_file(self, tmp_path: Path) -> None:
        path = tmp_path / "res.txt"
        write_results([], path)
        assert path.read_text() == ""
        assert len(read_results(path)) == 0

    def test_rewrite_is_fixpoint(self, tmp_path: Path) -> None:
        outputs = [
            TrackOutput(1, 1, BoundingBox(1.234, 5.678, 20.5, 30.25), 0.87654),
            TrackOutput(2, 1, BoundingBox(2.0, 6.0, 21.0, 31.0), 0.5),
        ]
        first = tmp_path / "a.txt"
        second = tmp_path / "b.txt"
        write_results(outputs, first)
        loaded = read_results(first)
        write_results(
            [
                TrackOutput(frame, entry.identity, entry.box, entry.score or 0.0)
                for frame, entry in loaded
            ],
            second,
        )
        assert first.read_text() == second.read_text()

    def test_tracked_rising_scores_read_back(self, tmp_path: Path) -> None:
        scores = (0.7, 0.8, 0.9, 1.0, 1.0, 1.0)
        frames = {
            frame: [Detection(BoundingBox.from_xywh(100.0 + 2.0 * frame, 50.0, 40.0, 16.0), s)]
            for frame, s in enumerate(scores, start=1)
        }
        outputs, _ = track_sequence(frames, TrackerConfig(min_hits=1))
        path = tmp_path / "res.txt"
        write_results(outputs, path)
        loaded = read_results(path)
        assert len(loaded) == len(scores)
        assert all(0.0 <= (entry.score or 0.0) <= 1.0 for _, entry in loaded)


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------


class TestEmbeddings:
    def test_reads_and_keys_by_frame_and_index(self, tmp_path: Path) -> None:
        text = "1,0,1,0,0,0\n1,1,0,1,0,0\n2,0,0,0,0,1\n"
        table = read_embeddings(_write(tmp_path, "emb.txt", text))
        assert sorted(table) == [1, 2]
        np.testing.assert_array_equal(table[1][1], [0.0, 1.0, 0.0, 0.0])

    def test_dimension_enforced(self, tmp_path: Path) -> None:
        text = "1,0,1,0,0,0\n1,1,0,1,0\n"
        with pytest.raises(InputFormatError, match=r":2: embedding dimension 3, expected 4"):
            read_embeddings(_write(tmp_path, "emb.txt", text))

    def test_non_unit_vector_normalized_with_warning(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        path = _write(tmp_path, "emb.txt", "1,0,2,0,0,0\n")
        with caplog.at_level(logging.WARNING, logger="sutrack"):
            table = read_embeddings(path)
        np.testing.assert_allclose(table[1][0], [1.0, 0.0, 0.0, 0.0])
        assert any("renormalized" in r.getMessage() for r in caplog.records)

    @pytest.mark.parametrize(
        ("text", "reason"),
        [
            ("1,0,0,0\n", "zero norm"),
            ("1,0\n", "expected frame"),
            ("1,-1,1,0\n", "det_index must be >= 0"),
            ("1,0,1,0\n1,0,0,1\n", "duplicate embedding"),
        ],
    )
    def test_invalid_rows_rejected(self, tmp_path: Path, text: str, reason: str) -> None:
        with pytest.raises(InputFormatError, match=reason):
            read_embeddings(_write(tmp_path, "emb.txt", text))

    def test_attach_by_detection_index(self, make_detection: DetectionFactory) -> None:
        detections = {1: [make_detection(0.0, 0.0), make_detection(50.0, 0.0)]}
        e = np.array([0.0, 1.0])
        attached = attach_embeddings(detections, {1: {1: e}})
        assert attached[1][0].embedding is None
        np.testing.assert_array_equal(attached[1][1].embedding, e)

    def test_attach_rejects_unknown_detection(self, make_detection: DetectionFactory) -> None:
        with pytest.raises(InputFormatError, match="has no matching detection"):
            attach_embeddings({1: [make_detection(0.0, 0.0)]}, {1: {3: np.array([1.0, 0.0])}})


# ---------------------------------------------------------------------------
# SequenceBundle
# ---------------------------------------------------------------------------


class TestSequenceBundle:
    def test_load_bundle(self, tmp_path: Path) -> None:
        dets = _write(tmp_path, "seq01.txt", "1,-1,0,0,10,10,0.9,-1,-1,-1\n")
        gt = _write(tmp_path, "gt.txt", "3,1,0,0,10,10,1,1,1.0\n")
        emb = _write(tmp_path, "emb.txt", "1,0,0,1\n")
        bundle = load_bundle(dets, gt_path=gt, embeddings_path=emb)
        assert bundle.name == "seq01"
        assert bundle.frame_count == 3
        assert bundle.has_embeddings
        assert bundle.frame_detections(1)[0].embedding is not None
        assert bundle.frame_detections(2) == []

    def test_frame_beyond_count_rejected(self, make_detection: DetectionFactory) -> None:
        with pytest.raises(InputFormatError, match="beyond frame count"):
            SequenceBundle("seq", {5: [make_detection(0.0, 0.0)]}, frame_count=4)

    def test_explicit_frame_count_kept(self) -> None:
        assert SequenceBundle("seq", {}, frame_count=12).frame_count == 12
