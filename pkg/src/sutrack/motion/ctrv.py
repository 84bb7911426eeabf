"""Constant turn-rate and velocity motion model.

State layout (eight components)::

    0 c_x    center x, px
    1 c_y    center y, px
    2 v      speed, px/frame
    3 theta  heading, rad, wrapped to (-pi, pi]
    4 omega  turn rate, rad/frame
    5 a      box area, px^2
    6 a_dot  area rate, px^2/frame
    7 r      aspect ratio w/h

Position and heading follow the CTRV arc, area integrates its rate, speed,
turn rate, area rate and aspect are carried unchanged.  The array function
:func:`ctrv_transition_array` propagates a whole sigma set at once.
"""
from __future__ import annotations

import math
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.geometry.box import BoundingBox

STATE_DIM = 8
MEASUREMENT_DIM = 4

CX, CY, SPEED, HEADING, TURN_RATE, AREA, AREA_RATE, ASPECT = range(STATE_DIM)

DEFAULT_TURN_RATE_EPSILON = 1e-6


class MotionState(NamedTuple):
    """Named view of one CTRV state vector."""

    cx: float
    cy: float
    speed: float
    heading: float
    turn_rate: float
    area: float
    area_rate: float
    aspect: float

    @classmethod
    def from_vector(cls, vector: NDArray[np.float64]) -> MotionState:
        return cls(*(float(v) for v in vector))

    def to_vector(self) -> NDArray[np.float64]:
        return np.array(self, dtype=np.float64)

    @classmethod
    def from_box(cls, box: BoundingBox) -> MotionState:
        """Birth state: observed center, area and aspect, everything else zero."""
        cx, cy, area, aspect = box.to_measurement()
        return cls(cx, cy, 0.0, 0.0, 0.0, area, 0.0, aspect)


def wrap_angle(angle: NDArray[np.float64] | float) -> NDArray[np.float64]:
    """Wrap angles to ``(-pi, pi]``."""
    return np.pi - np.mod(np.pi - np.asarray(angle, dtype=np.float64), 2.0 * np.pi)


def ctrv_transition_array(
    states: NDArray[np.float64],
    dt: float,
    epsilon: float = DEFAULT_TURN_RATE_EPSILON,
) -> NDArray[np.float64]:
    """Propagate states of shape ``(..., 8)`` by *dt* frames.

    Turn rates with ``|omega| <= epsilon`` use the straight-line limit.
    """
    out = np.array(states, dtype=np.float64, copy=True)
    speed = states[..., SPEED]
    heading = states[..., HEADING]
    turn = states[..., TURN_RATE]

    turning = np.abs(turn) > epsilon
    safe_turn = np.where(turning, turn, 1.0)
    new_heading = heading + turn * dt

    dx_arc = speed / safe_turn * (np.sin(new_heading) - np.sin(heading))
    dy_arc = speed / safe_turn * (np.cos(heading) - np.cos(new_heading))
    dx_line = speed * np.cos(heading) * dt
    dy_line = speed * np.sin(heading) * dt

    out[..., CX] = states[..., CX] + np.where(turning, dx_arc, dx_line)
    out[..., CY] = states[..., CY] + np.where(turning, dy_arc, dy_line)
    out[..., HEADING] = wrap_angle(new_heading)
    out[..., AREA] = states[..., AREA] + states[..., AREA_RATE] * dt
    return out


def ctrv_transition(
    state: MotionState, dt: float, epsilon: float = DEFAULT_TURN_RATE_EPSILON
) -> MotionState:
    """Propagate one state by *dt* frames (``dt > 0``).

    >>> s = ctrv_transition(MotionState(0, 0, 5, 0, 0, 100, 0, 1), 1.0)
    >>> (s.cx, s.cy)
    (5.0, 0.0)
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    return MotionState.from_vector(ctrv_transition_array(state.to_vector(), dt, epsilon))


def measure_array(states: NDArray[np.float64]) -> NDArray[np.float64]:
    """Measurement function for states of shape ``(..., 8)``: ``[c_x, c_y, a, r]``."""
    return np.asarray(states[..., [CX, CY, AREA, ASPECT]], dtype=np.float64)


def measure(state: MotionState) -> NDArray[np.float64]:
    return measure_array(state.to_vector())


def box_measurement(box: BoundingBox) -> NDArray[np.float64]:
    return np.array(box.to_measurement(), dtype=np.float64)


def clamp_state(
    state: NDArray[np.float64],
    min_area: float,
    min_aspect: float,
    max_aspect: float,
) -> NDArray[np.float64]:
    """Keep area and aspect in a range where a box can be rebuilt."""
    out = state.copy()
    out[AREA] = max(out[AREA], min_area)
    out[ASPECT] = min(max(out[ASPECT], min_aspect), max_aspect)
    out[HEADING] = float(wrap_angle(out[HEADING]))
    return out


def speed_heading(dx: float, dy: float, dt: float) -> tuple[float, float]:
    """Speed and heading of a displacement over *dt* frames."""
    return math.hypot(dx, dy) / dt, math.atan2(dy, dx)
