"""Re-ID embedding sidecar: ``frame,det_index,v1,...,vd``.

``det_index`` is the 0-based position of the detection within its frame, in
detection-file order.  Vectors are L2-normalized on load.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from sutrack.io.parsing import format_error, iter_rows, parse_float, parse_frame, parse_int
from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from numpy.typing import NDArray

    from sutrack.association.detection import Detection

logger = logging.getLogger(__name__)

NORM_WARNING_TOLERANCE = 1e-3

EmbeddingTable = dict[int, dict[int, "NDArray[np.float64]"]]


def read_embeddings(path: str | Path) -> EmbeddingTable:
    """Unit embeddings keyed by frame, then detection index.

    The dimension is taken from the first row and enforced on every later one.
    """
    path = Path(path)
    table: EmbeddingTable = {}
    dimension: int | None = None
    for line_number, fields in iter_rows(path):
        if len(fields) < 3:
            raise format_error(path, line_number, "expected frame, det_index and a vector")
        frame = parse_frame(path, line_number, fields[0])
        index = parse_int(path, line_number, "det_index", fields[1])
        if index < 0:
            raise format_error(path, line_number, f"det_index must be >= 0, got {index}")
        vector = np.array(
            [parse_float(path, line_number, f"v{k}", t) for k, t in enumerate(fields[2:], 1)]
        )
        if dimension is None:
            dimension = vector.shape[0]
        elif vector.shape[0] != dimension:
            raise format_error(
                path, line_number, f"embedding dimension {vector.shape[0]}, expected {dimension}"
            )
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise format_error(path, line_number, "embedding has zero norm")
        if abs(norm - 1.0) > NORM_WARNING_TOLERANCE:
            logger.warning("%s:%d: embedding norm %.4f renormalized to 1", path, line_number, norm)
        frame_table = table.setdefault(frame, {})
        if index in frame_table:
            raise format_error(path, line_number, f"duplicate embedding for detection {index}")
        frame_table[index] = vector / norm
    return {frame: table[frame] for frame in sorted(table)}


def attach_embeddings(
    detections: Mapping[int, Sequence[Detection]], embeddings: EmbeddingTable
) -> dict[int, list[Detection]]:
    """Detections with their embeddings; detections without a row keep none."""
    for frame, rows in embeddings.items():
        available = len(detections.get(frame, ()))
        for index in rows:
            if index >= available:
                raise InputFormatError(
                    f"Embedding for frame {frame} detection {index} has no matching detection "
                    f"({available} in frame)",
                    context={"frame": frame, "det_index": index},
                )
    return {
        frame: [
            detection.with_embedding(embeddings.get(frame, {}).get(index))
            for index, detection in enumerate(frame_detections)
        ]
        for frame, frame_detections in detections.items()
    }
