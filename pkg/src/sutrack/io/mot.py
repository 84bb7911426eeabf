"""MOT-Challenge text formats.

Detections  ``frame,-1,bb_left,bb_top,bb_width,bb_height,conf,-1,-1,-1``
Ground truth ``frame,id,bb_left,bb_top,bb_width,bb_height,flag,class,visibility``
Results     ``frame,id,bb_left,bb_top,bb_width,bb_height,conf,-1,-1,-1``

Frames are 1-based; boxes are converted to corner form here and nowhere else.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable
from pathlib import Path
from typing import TYPE_CHECKING

from sutrack.association.detection import Detection
from sutrack.geometry.box import BoundingBox
from sutrack.io.parsing import format_error, iter_rows, parse_float, parse_frame, parse_int
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from sutrack.association.track import TrackOutput

logger = logging.getLogger(__name__)

DETECTION_FIELDS = 10
GT_FIELDS = 9
RESULT_FIELDS = 10


def _parse_box(path: Path, line_number: int, fields: Sequence[str]) -> BoundingBox:
    left, top, width, height = (
        parse_float(path, line_number, name, text)
        for name, text in zip(("bb_left", "bb_top", "bb_width", "bb_height"), fields)
    )
    if width <= 0.0 or height <= 0.0:
        raise format_error(
            path, line_number, f"box width and height must be positive, got {width}x{height}"
        )
    return BoundingBox.from_xywh(left, top, width, height)


def _parse_score(path: Path, line_number: int, text: str) -> float:
    score = parse_float(path, line_number, "conf", text)
    if not 0.0 <= score <= 1.0:
        raise format_error(path, line_number, f"conf must lie in [0, 1], got {score}")
    return score


def read_detections(path: str | Path) -> dict[int, list[Detection]]:
    """Detections by frame, frames ascending, file order kept within a frame."""
    path = Path(path)
    by_frame: dict[int, list[Detection]] = {}
    for line_number, fields in iter_rows(path, DETECTION_FIELDS):
        frame = parse_frame(path, line_number, fields[0])
        if parse_int(path, line_number, "id", fields[1]) != -1:
            raise format_error(path, line_number, f"detection id must be -1, got {fields[1]}")
        box = _parse_box(path, line_number, fields[2:6])
        score = _parse_score(path, line_number, fields[6])
        by_frame.setdefault(frame, []).append(Detection(box, score))
    logger.debug("Read %d detection frames from %s", len(by_frame), path)
    return {frame: by_frame[frame] for frame in sorted(by_frame)}


def _add_entry(
    trajectories: TrajectorySet,
    path: Path,
    line_number: int,
    frame: int,
    identity: int,
    box: BoundingBox,
    score: float | None = None,
) -> None:
    try:
        trajectories.add(frame, identity, box, score)
    except InputFormatError as exc:
        raise format_error(path, line_number, str(exc)) from exc


def read_gt(path: str | Path) -> TrajectorySet:
    """Ground truth; rows with ``flag == 0`` are skipped."""
    path = Path(path)
    trajectories = TrajectorySet()
    for line_number, fields in iter_rows(path, GT_FIELDS):
        frame = parse_frame(path, line_number, fields[0])
        identity = parse_int(path, line_number, "id", fields[1])
        box = _parse_box(path, line_number, fields[2:6])
        if parse_int(path, line_number, "flag", fields[6]) == 0:
            continue
        _add_entry(trajectories, path, line_number, frame, identity, box)
    return trajectories


def _exact(value: float) -> str:
    return repr(float(value))


def write_gt(trajectories: TrajectorySet, path: str | Path) -> None:
    """Write ground truth with shortest round-trip float formatting."""
    lines = []
    for frame, entry in trajectories:
        left, top, width, height = entry.box.to_xywh()
        coords = ",".join(_exact(v) for v in (left, top, width, height))
        lines.append(f"{frame},{entry.identity},{coords},1,1,1.0\n")
    Path(path).write_text("".join(lines), encoding="utf-8")


def write_detections(detections: Mapping[int, Sequence[Detection]], path: str | Path) -> None:
    lines = []
    for frame in sorted(detections):
        for detection in detections[frame]:
            coords = ",".join(_exact(v) for v in detection.box.to_xywh())
            lines.append(f"{frame},-1,{coords},{_exact(detection.score)},-1,-1,-1\n")
    Path(path).write_text("".join(lines), encoding="utf-8")


def _fixed(value: float, digits: int) -> str:
    text = f"{value:.{digits}f}"
    return text[1:] if text.startswith("-") and float(text) == 0.0 else text


def format_result(output: TrackOutput) -> str:
    """One result line (no newline) with 2-digit coordinates and 4-digit conf."""
    coords = ",".join(_fixed(v, 2) for v in output.box.to_xywh())
    return f"{output.frame},{output.track_id},{coords},{_fixed(output.score, 4)},-1,-1,-1"


def write_results(outputs: Iterable[TrackOutput], path: str | Path) -> None:
    """Write tracker output sorted by frame, then identity."""
    ordered = sorted(outputs, key=lambda o: (o.frame, o.track_id))
    Path(path).write_text("".join(f"{format_result(o)}\n" for o in ordered), encoding="utf-8")


def read_results(path: str | Path) -> TrajectorySet:
    path = Path(path)
    trajectories = TrajectorySet()
    for line_number, fields in iter_rows(path, RESULT_FIELDS):
        frame = parse_frame(path, line_number, fields[0])
        identity = parse_int(path, line_number, "id", fields[1])
        box = _parse_box(path, line_number, fields[2:6])
        score = _parse_score(path, line_number, fields[6])
        _add_entry(trajectories, path, line_number, frame, identity, box, score)
    return trajectories
