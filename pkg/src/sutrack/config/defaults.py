"""Default configuration constants for sutrack.

``DEFAULT_CONFIG`` is the starting point used by ``ConfigLoader.load_auto()``
when no config file is found, and the content written by ``sutrack init``.
"""
from __future__ import annotations

from sutrack.schema.config import SuTrackConfig

DEFAULT_CONFIG: SuTrackConfig = SuTrackConfig()
"""Baseline ``SuTrackConfig``: every tracker, filter and simulator default."""

CONFIG_SECTIONS: tuple[str, ...] = ("tracker", "fishiou", "ukf", "sim")
