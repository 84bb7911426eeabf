"""Maximum-similarity one-to-one assignment."""
from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

if TYPE_CHECKING:
    from numpy.typing import NDArray


class Assignment(NamedTuple):
    """Matched ``(row, col)`` pairs in ascending row order, plus leftovers."""

    matches: list[tuple[int, int]]
    unmatched_rows: list[int]
    unmatched_cols: list[int]

    def total(self, matrix: NDArray[np.float64]) -> float:
        return float(sum(matrix[r, c] for r, c in self.matches))


def hungarian(matrix: NDArray[np.float64]) -> Assignment:
    """Assignment maximizing total similarity on a possibly rectangular matrix.

    Ties resolve deterministically (scipy's solver is deterministic and the
    result is reported in row order).

    >>> hungarian(np.array([[0.0, 1.0], [1.0, 0.0]])).matches
    [(0, 1), (1, 0)]
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"Cost matrix must be 2-D, got shape {matrix.shape}")
    n_rows, n_cols = matrix.shape
    if matrix.size == 0:
        return Assignment([], list(range(n_rows)), list(range(n_cols)))
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Cost matrix must be finite")

    rows, cols = linear_sum_assignment(matrix, maximize=True)
    matches = sorted((int(r), int(c)) for r, c in zip(rows, cols))
    matched_rows = {r for r, _ in matches}
    matched_cols = {c for _, c in matches}
    return Assignment(
        matches=matches,
        unmatched_rows=[r for r in range(n_rows) if r not in matched_rows],
        unmatched_cols=[c for c in range(n_cols) if c not in matched_cols],
    )
