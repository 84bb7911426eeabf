"""Synthetic fish sequences, detector model and kinematic statistics."""
from __future__ import annotations

from sutrack.sim.corruption import corrupt
from sutrack.sim.kinematics import DEFAULT_DIRECTION_BINS, KinematicStats, kinematic_stats
from sutrack.sim.rng import spawn_generators
from sutrack.sim.simulator import draw_body, simulate

__all__ = [
    "DEFAULT_DIRECTION_BINS",
    "KinematicStats",
    "corrupt",
    "draw_body",
    "kinematic_stats",
    "simulate",
    "spawn_generators",
]
