"""Kinematic statistics of trajectories: speed, angular velocity, heading."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from sutrack.motion.ctrv import wrap_angle

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.metrics.trajectory import TrajectorySet

DEFAULT_DIRECTION_BINS = 16
STATIONARY_EPSILON = 1e-9


@dataclass(frozen=True, eq=False)
class KinematicStats:
    """Per-frame means over identities plus the pooled heading histogram.

    ``mean_speed`` has an entry for every frame where at least one identity
    is also present on the previous frame (stationary steps count as 0).
    ``mean_abs_angular_velocity`` only has entries for frames where at least
    one identity's heading is defined on this and the previous frame.
    """

    mean_speed: dict[int, float]
    mean_abs_angular_velocity: dict[int, float]
    direction_edges: NDArray[np.float64]
    direction_counts: NDArray[np.int64]
    speed_samples: list[float] = field(default_factory=list)
    angular_samples: list[float] = field(default_factory=list)

    @property
    def overall_mean_speed(self) -> float:
        return float(np.mean(self.speed_samples)) if self.speed_samples else 0.0

    @property
    def overall_mean_abs_angular_velocity(self) -> float:
        return float(np.mean(np.abs(self.angular_samples))) if self.angular_samples else 0.0

    def rows(self) -> list[tuple[int, float, float | None]]:
        """``(frame, mean_speed, mean_abs_angular_velocity or None)`` by frame."""
        return [
            (frame, speed, self.mean_abs_angular_velocity.get(frame))
            for frame, speed in sorted(self.mean_speed.items())
        ]

    def summary(self) -> dict[str, float]:
        return {
            "mean_speed": self.overall_mean_speed,
            "mean_abs_angular_velocity": self.overall_mean_abs_angular_velocity,
        }


def kinematic_stats(
    trajectories: TrajectorySet, direction_bins: int = DEFAULT_DIRECTION_BINS
) -> KinematicStats:
    """Speed and turn statistics from box-center displacements.

    Speed at frame ``f`` is ``|c_f - c_{f-1}|`` for identities present on
    both frames.  Angular velocity at ``f`` is the wrapped change of
    displacement heading between ``f-1`` and ``f``; headings of stationary
    steps are undefined and excluded.
    """
    if direction_bins < 1:
        raise ValueError(f"direction_bins must be positive, got {direction_bins}")
    speeds: dict[int, list[float]] = {}
    turns: dict[int, list[float]] = {}
    headings: list[float] = []

    for track in trajectories.by_identity().values():
        previous_center: tuple[float, float] | None = None
        previous_heading: float | None = None
        previous_frame: int | None = None
        for frame in sorted(track):
            center = track[frame].box.center
            consecutive = previous_frame is not None and frame == previous_frame + 1
            heading: float | None = None
            if consecutive and previous_center is not None:
                dx = center[0] - previous_center[0]
                dy = center[1] - previous_center[1]
                step = math.hypot(dx, dy)
                speeds.setdefault(frame, []).append(step)
                if step > STATIONARY_EPSILON:
                    heading = math.atan2(dy, dx)
                    headings.append(heading)
                    if previous_heading is not None:
                        turn = float(wrap_angle(heading - previous_heading))
                        turns.setdefault(frame, []).append(abs(turn))
            previous_center, previous_heading, previous_frame = center, heading, frame

    counts, edges = np.histogram(headings, bins=direction_bins, range=(-math.pi, math.pi))
    return KinematicStats(
        mean_speed={f: float(np.mean(v)) for f, v in sorted(speeds.items())},
        mean_abs_angular_velocity={f: float(np.mean(v)) for f, v in sorted(turns.items())},
        direction_edges=edges.astype(np.float64),
        direction_counts=counts.astype(np.int64),
        speed_samples=[s for f in sorted(speeds) for s in speeds[f]],
        angular_samples=[t for f in sorted(turns) for t in turns[f]],
    )
