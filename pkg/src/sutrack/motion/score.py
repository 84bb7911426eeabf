"""Per-track detection-score filter.

A two-state ``(score, rate)`` constant-velocity Kalman filter built on
filterpy.  The cascade predicts each track's score alongside its box and
can fold the agreement between predicted and observed score into the
association cost.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from filterpy.kalman import KalmanFilter

if TYPE_CHECKING:
    from numpy.typing import NDArray

_INITIAL_COVARIANCE = (1.0, 0.1)
_PROCESS_NOISE = (1e-4, 1e-5)
_MEASUREMENT_NOISE = 1e-2


def _clamp(score: float) -> float:
    return min(max(score, 0.0), 1.0)


def _check_score(score: float) -> float:
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"Detection scores must lie in [0, 1], got {score}")
    return float(score)


class ScoreFilter:
    """Constant-velocity Kalman filter over a detection confidence.

    Examples
    --------
    >>> f = ScoreFilter(0.5)
    >>> f.predict()
    0.5
    """

    def __init__(self, score: float) -> None:
        kf = KalmanFilter(dim_x=2, dim_z=1)
        kf.x = np.array([[_check_score(score)], [0.0]])
        kf.F = np.array([[1.0, 1.0], [0.0, 1.0]])
        kf.H = np.array([[1.0, 0.0]])
        kf.P = np.diag(_INITIAL_COVARIANCE)
        kf.Q = np.diag(_PROCESS_NOISE)
        kf.R = np.array([[_MEASUREMENT_NOISE]])
        self._kf = kf

    @property
    def score(self) -> float:
        """Current score estimate clamped to ``[0, 1]``."""
        return _clamp(float(self._kf.x[0, 0]))

    @property
    def score_rate(self) -> float:
        return float(self._kf.x[1, 0])

    @property
    def covariance(self) -> NDArray[np.float64]:
        return np.array(self._kf.P, copy=True)

    def predict(self) -> float:
        """Advance one frame and return the predicted score clamped to ``[0, 1]``."""
        self._kf.predict()
        return self.score

    def update(self, observed: float) -> float:
        """Fold in an observed score and return the clamped posterior."""
        self._kf.update(np.array([[_check_score(observed)]]))
        self._kf.x[0, 0] = self.score
        return self.score

    def __repr__(self) -> str:
        return f"ScoreFilter(score={self.score:.4f}, rate={self.score_rate:.4f})"


def score_predict(score_filter: ScoreFilter) -> float:
    return score_filter.predict()


def score_update(score_filter: ScoreFilter, observed: float) -> ScoreFilter:
    score_filter.update(observed)
    return score_filter
