"""Synthetic multi-fish ground truth.

Each fish follows a CTRV integrator driven by two Ornstein-Uhlenbeck
processes, one for speed and one for turn rate (mean zero).  Headings reflect
specularly at the arena walls.  Body area and aspect are drawn once per fish.
"""
from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from sutrack.geometry.box import BoundingBox
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.motion.ctrv import (
    AREA,
    ASPECT,
    CX,
    CY,
    HEADING,
    SPEED,
    STATE_DIM,
    TURN_RATE,
    ctrv_transition_array,
    wrap_angle,
)
from sutrack.sim.rng import spawn_generators

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from sutrack.schema.config import SimParams

logger = logging.getLogger(__name__)


def draw_body(generator: np.random.Generator, params: SimParams) -> tuple[float, float]:
    """Log-normal body area and aspect around the configured means."""
    area = params.body_area_mean * math.exp(params.body_area_jitter * generator.standard_normal())
    aspect = params.aspect_mean * math.exp(params.aspect_jitter * generator.standard_normal())
    return area, aspect


def _half_extent(area: float, aspect: float, params: SimParams) -> tuple[float, float]:
    half_w = min(math.sqrt(area * aspect) / 2.0, params.arena_width / 2.0)
    half_h = min(math.sqrt(area / aspect) / 2.0, params.arena_height / 2.0)
    return half_w, half_h


def _reflect(
    states: NDArray[np.float64],
    low: NDArray[np.float64],
    high: NDArray[np.float64],
    axis: int,
) -> None:
    """Mirror positions and headings that left ``[low, high]`` along *axis* in place."""
    position = states[:, axis]
    below = position < low
    above = position > high
    position[below] = 2.0 * low[below] - position[below]
    position[above] = 2.0 * high[above] - position[above]
    np.clip(position, low, high, out=position)
    bounced = below | above
    if axis == CX:
        states[bounced, HEADING] = wrap_angle(math.pi - states[bounced, HEADING])
    else:
        states[bounced, HEADING] = wrap_angle(-states[bounced, HEADING])


def simulate(params: SimParams) -> TrajectorySet:
    """Ground-truth trajectories for ``n_fish`` fish over ``n_frames`` frames.

    Identities are ``1..n_fish``; the result is fully determined by
    ``params.seed`` and ``params.rng_algorithm``.
    """
    ground_truth = TrajectorySet()
    n = params.n_fish
    if n == 0 or params.n_frames == 0:
        return ground_truth

    generators, _ = spawn_generators(params)
    states = np.zeros((n, STATE_DIM), dtype=np.float64)
    low_x = np.empty(n)
    high_x = np.empty(n)
    low_y = np.empty(n)
    high_y = np.empty(n)
    noise = np.empty((n, params.n_frames, 2), dtype=np.float64)

    for k, generator in enumerate(generators):
        area, aspect = draw_body(generator, params)
        half_w, half_h = _half_extent(area, aspect, params)
        low_x[k], high_x[k] = half_w, params.arena_width - half_w
        low_y[k], high_y[k] = half_h, params.arena_height - half_h
        states[k, CX] = generator.uniform(low_x[k], high_x[k])
        states[k, CY] = generator.uniform(low_y[k], high_y[k])
        states[k, HEADING] = generator.uniform(-math.pi, math.pi)
        states[k, SPEED] = params.speed_mean
        states[k, AREA] = area
        states[k, ASPECT] = aspect
        noise[k] = generator.standard_normal((params.n_frames, 2))

    for frame in range(1, params.n_frames + 1):
        for k in range(n):
            box = BoundingBox.from_measurement(
                states[k, CX], states[k, CY], states[k, AREA], states[k, ASPECT]
            )
            ground_truth.add(frame, k + 1, box)
        if frame == params.n_frames:
            break

        eps_speed = noise[:, frame - 1, 0]
        eps_turn = noise[:, frame - 1, 1]
        states[:, SPEED] += (
            params.speed_reversion * (params.speed_mean - states[:, SPEED])
            + params.speed_sigma * eps_speed
        )
        np.abs(states[:, SPEED], out=states[:, SPEED])
        states[:, TURN_RATE] += (
            -params.turn_reversion * states[:, TURN_RATE] + params.turn_sigma * eps_turn
        )
        states = ctrv_transition_array(states, 1.0)
        _reflect(states, low_x, high_x, CX)
        _reflect(states, low_y, high_y, CY)

    logger.debug("Simulated %d fish over %d frames", n, params.n_frames)
    return ground_truth
