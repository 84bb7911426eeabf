"""Detector output consumed by the tracker."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.geometry.box import BoundingBox

EMBEDDING_NORM_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class Detection:
    """One detector output: box, confidence and optional Re-ID embedding.

    Embeddings, when present, must be unit-normalized.
    """

    box: BoundingBox
    score: float
    embedding: NDArray[np.float64] | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"Detection score must lie in [0, 1], got {self.score}")
        if self.embedding is not None:
            norm = float(np.linalg.norm(self.embedding))
            if abs(norm - 1.0) > EMBEDDING_NORM_TOLERANCE:
                raise ValueError(f"Detection embedding must have unit norm, got {norm:.6f}")

    def with_embedding(self, embedding: NDArray[np.float64] | None) -> Detection:
        return Detection(box=self.box, score=self.score, embedding=embedding)
