"""Box filters: the per-track motion estimators used by the tracker.

``BoxFilter`` is the abstract surface the cascade relies on.  Two
implementations ship:

- ``UnscentedBoxFilter``: UKF over the CTRV state, the default.
- ``KalmanBoxFilter``: linear constant-velocity filter on
  ``[c_x, c_y, a, r, v_x, v_y, v_a]`` (filterpy), kept for ablation runs.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

import numpy as np
from filterpy.kalman import KalmanFilter

from sutrack.geometry.box import BoundingBox
from sutrack.motion import ukf
from sutrack.motion.ctrv import (
    AREA,
    ASPECT,
    CX,
    CY,
    HEADING,
    SPEED,
    TURN_RATE,
    box_measurement,
    speed_heading,
    wrap_angle,
)
from sutrack.schema.config import MotionModelName, UkfSettings

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)


class BoxFilter(ABC):
    """Motion estimator of a single track."""

    def __init__(self, box: BoundingBox, settings: UkfSettings) -> None:
        self._settings = settings
        self._last_box = box
        self._observations = 1

    @abstractmethod
    def predict(self, dt: float = 1.0) -> BoundingBox:
        """Advance the state by *dt* frames and return the predicted box."""

    @abstractmethod
    def update(self, box: BoundingBox) -> None:
        """Fold an observed box into the state."""

    @property
    @abstractmethod
    def box(self) -> BoundingBox:
        """Box of the current state."""

    @property
    @abstractmethod
    def estimate(self) -> ukf.StateEstimate:
        """Current mean and covariance of the filter state."""

    @property
    def observations(self) -> int:
        return self._observations

    def _state_box(self, cx: float, cy: float, area: float, aspect: float) -> BoundingBox:
        s = self._settings
        area = max(area, s.min_area)
        aspect = min(max(aspect, s.min_aspect), s.max_aspect)
        return BoundingBox.from_measurement(cx, cy, area, aspect)


class UnscentedBoxFilter(BoxFilter):
    """UKF with the CTRV model.

    Speed and heading are unobservable from a single box; on the second
    observation they are seeded from the displacement between the two boxes.
    A later observation whose position innovation exceeds
    ``settings.maneuver_gate`` restarts position, speed and heading the same
    way; the turn-rate estimate is kept.
    """

    def __init__(self, box: BoundingBox, settings: UkfSettings | None = None) -> None:
        settings = settings or UkfSettings()
        super().__init__(box, settings)
        self._params = ukf.UkfParams.for_box(box, settings)
        self._model = ukf.ctrv_model(settings)
        self._estimate = ukf.initial_estimate(box, settings)
        self._frames_since_observation = 0.0
        self._restarts = 0

    @property
    def restarts(self) -> int:
        """Number of maneuver restarts so far."""
        return self._restarts

    def predict(self, dt: float = 1.0) -> BoundingBox:
        self._estimate = ukf.predict(self._estimate, self._params, dt, self._model)
        self._frames_since_observation += dt
        return self.box

    def update(self, box: BoundingBox) -> None:
        z = box_measurement(box)
        maneuver = self._is_maneuver(z)
        self._estimate = ukf.update(self._estimate, z, self._params, self._model)
        if maneuver:
            self._restart(box)
        elif self._observations == 1:
            self._seed_velocity(box)
        self._observations += 1
        self._last_box = box
        self._frames_since_observation = 0.0

    def _is_maneuver(self, z: NDArray[np.float64]) -> bool:
        gate = self._settings.maneuver_gate
        if gate is None or self._observations < 2:
            return False
        distance = ukf.normalized_innovation(
            self._estimate, z, self._params, self._model, components=(0, 1)
        )
        return distance > gate

    def _restart(self, box: BoundingBox) -> None:
        """Pin the center to *box* and re-seed speed and heading."""
        mean = self._estimate.mean.copy()
        cov = self._estimate.covariance.copy()
        mean[CX], mean[CY] = box.center
        for idx in (CX, CY):
            cov[idx, :] = 0.0
            cov[:, idx] = 0.0
            cov[idx, idx] = self._params.measurement_noise[idx, idx]
        self._estimate = ukf.StateEstimate(mean=mean, covariance=cov)
        self._seed_velocity(box, turn_rate=float(mean[TURN_RATE]))
        self._restarts += 1
        logger.debug("Motion restarted at %s", box)

    def _seed_velocity(self, box: BoundingBox, turn_rate: float = 0.0) -> None:
        dt = max(self._frames_since_observation, 1.0)
        (x0, y0), (x1, y1) = self._last_box.center, box.center
        speed, heading = speed_heading(x1 - x0, y1 - y0, dt)
        # the chord direction lags the current heading by half the turn
        heading = float(wrap_angle(heading + turn_rate * dt / 2.0))

        pos_std = self._settings.measurement_position_std * self._last_box.diagonal
        distance = speed * dt
        heading_var = min((math.sqrt(2.0) * pos_std / max(distance, pos_std)) ** 2, 1.0)

        mean = self._estimate.mean.copy()
        cov = self._estimate.covariance.copy()
        seeded = (SPEED, HEADING, TURN_RATE)
        mean[SPEED], mean[HEADING], mean[TURN_RATE] = speed, heading, turn_rate
        for idx in seeded:
            cov[idx, :] = 0.0
            cov[:, idx] = 0.0
        cov[SPEED, SPEED] = (math.sqrt(2.0) * pos_std / dt) ** 2
        cov[HEADING, HEADING] = heading_var
        cov[TURN_RATE, TURN_RATE] = self._settings.initial_turn_rate_std**2
        self._estimate = ukf.StateEstimate(mean=mean, covariance=cov)

    @property
    def estimate(self) -> ukf.StateEstimate:
        return self._estimate

    @property
    def box(self) -> BoundingBox:
        m = self._estimate.mean
        return self._state_box(m[CX], m[CY], m[AREA], m[ASPECT])


class KalmanBoxFilter(BoxFilter):
    """Linear constant-velocity filter with the same noise scaling as the UKF."""

    def __init__(self, box: BoundingBox, settings: UkfSettings | None = None) -> None:
        settings = settings or UkfSettings()
        super().__init__(box, settings)
        diag, area, aspect = box.diagonal, box.area, box.aspect

        kf = KalmanFilter(dim_x=7, dim_z=4)
        kf.F = np.eye(7)
        kf.F[0, 4] = kf.F[1, 5] = kf.F[2, 6] = 1.0
        kf.H = np.eye(4, 7)
        meas = np.array(
            [
                settings.measurement_position_std * diag,
                settings.measurement_position_std * diag,
                settings.measurement_area_std * area,
                settings.measurement_aspect_std * aspect,
            ]
        )
        kf.R = np.diag(meas**2)
        kf.Q = np.diag(
            np.array(
                [
                    settings.process_position_std * diag,
                    settings.process_position_std * diag,
                    settings.process_area_std * area,
                    settings.process_aspect_std * aspect,
                    settings.process_speed_std * diag,
                    settings.process_speed_std * diag,
                    settings.process_area_rate_std * area,
                ]
            )
            ** 2
        )
        kf.P = np.diag(
            np.concatenate(
                [
                    meas,
                    [
                        settings.initial_speed_std * diag,
                        settings.initial_speed_std * diag,
                        settings.initial_area_rate_std * area,
                    ],
                ]
            )
            ** 2
        )
        kf.x[:4, 0] = box_measurement(box)
        self._kf = kf
        self._base_q = np.array(kf.Q, copy=True)

    def predict(self, dt: float = 1.0) -> BoundingBox:
        if self._kf.x[2, 0] + self._kf.x[6, 0] * dt <= 0.0:
            self._kf.x[6, 0] = 0.0
        self._kf.F[0, 4] = self._kf.F[1, 5] = self._kf.F[2, 6] = dt
        self._kf.predict(Q=self._base_q * dt)
        return self.box

    def update(self, box: BoundingBox) -> None:
        self._kf.update(box_measurement(box))
        self._observations += 1
        self._last_box = box

    @property
    def estimate(self) -> ukf.StateEstimate:
        return ukf.StateEstimate(
            mean=np.array(self._kf.x[:, 0], dtype=np.float64),
            covariance=np.array(self._kf.P, dtype=np.float64),
        )

    @property
    def box(self) -> BoundingBox:
        x = self._kf.x[:, 0]
        return self._state_box(x[0], x[1], x[2], x[3])


def make_box_filter(
    box: BoundingBox, motion_model: MotionModelName, settings: UkfSettings
) -> BoxFilter:
    """Factory keyed by the configured motion model name."""
    if motion_model == "ukf":
        return UnscentedBoxFilter(box, settings)
    return KalmanBoxFilter(box, settings)
