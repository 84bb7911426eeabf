"""Everything needed to track (and optionally score) one sequence."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from sutrack.io.embeddings import attach_embeddings, read_embeddings
from sutrack.io.mot import read_detections, read_gt
from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from sutrack.association.detection import Detection
    from sutrack.io.embeddings import EmbeddingTable
    from sutrack.metrics.trajectory import TrajectorySet

logger = logging.getLogger(__name__)

DEFAULT_FPS = 25.0


@dataclass
class SequenceBundle:
    """Detections by frame with optional ground truth and embeddings.

    ``frame_count`` defaults to the last frame seen in any of the inputs.
    Embeddings, when given, are attached to ``detections`` at construction.
    """

    name: str
    detections: dict[int, list[Detection]]
    gt: TrajectorySet | None = None
    embeddings: EmbeddingTable | None = None
    frame_count: int = 0
    fps: float = DEFAULT_FPS

    def __post_init__(self) -> None:
        if self.embeddings is not None:
            self.detections = attach_embeddings(self.detections, self.embeddings)
        seen = [max(self.detections, default=0)]
        if self.gt is not None:
            seen.append(max(self.gt.frames(), default=0))
        if self.embeddings is not None:
            seen.append(max(self.embeddings, default=0))
        last = max(seen)
        if self.frame_count == 0:
            self.frame_count = last
        elif last > self.frame_count:
            raise InputFormatError(
                f"Sequence {self.name!r} references frame {last} beyond frame count "
                f"{self.frame_count}",
                context={"sequence": self.name, "frame": last},
            )

    @property
    def has_embeddings(self) -> bool:
        return self.embeddings is not None

    def frame_detections(self, frame: int) -> list[Detection]:
        return self.detections.get(frame, [])


def load_bundle(
    detections_path: str | Path,
    *,
    gt_path: str | Path | None = None,
    embeddings_path: str | Path | None = None,
    frame_count: int = 0,
    fps: float = DEFAULT_FPS,
) -> SequenceBundle:
    """Read a sequence from its MOT files; the name is the detection file stem."""
    detections_path = Path(detections_path)
    bundle = SequenceBundle(
        name=detections_path.stem,
        detections=read_detections(detections_path),
        gt=read_gt(gt_path) if gt_path is not None else None,
        embeddings=read_embeddings(embeddings_path) if embeddings_path is not None else None,
        frame_count=frame_count,
        fps=fps,
    )
    logger.debug(
        "Loaded sequence %s: %d frames, embeddings=%s",
        bundle.name,
        bundle.frame_count,
        bundle.has_embeddings,
    )
    return bundle
