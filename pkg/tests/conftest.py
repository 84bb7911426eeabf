"""Shared test fixtures for sutrack.

Fixtures defined here are available to all tests in the suite without
needing an explicit import. Add project-wide fixtures here; keep
domain-specific fixtures close to the tests that use them.
"""
from __future__ import annotations

from collections.abc import Callable

import pytest

from sutrack.association.detection import Detection
from sutrack.geometry.box import BoundingBox
from sutrack.metrics.trajectory import TrajectorySet
from sutrack.schema.config import SimParams, TrackerConfig

BoxFactory = Callable[..., BoundingBox]


@pytest.fixture(autouse=True)
def _no_config_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep a developer's ``SUT_CONFIG`` from leaking into tests."""
    monkeypatch.delenv("SUT_CONFIG", raising=False)


@pytest.fixture()
def package_name() -> str:
    return "sutrack"


@pytest.fixture()
def expected_version() -> str:
    """Return the current expected version string.

    Update this fixture when cutting a release so that the version
    test immediately catches stale ``__version__`` values.
    """
    return "0.1.0"


@pytest.fixture()
def make_box() -> BoxFactory:
    """Build a box from ``(left, top, width, height)``."""

    def factory(left: float, top: float, width: float = 10.0, height: float = 10.0) -> BoundingBox:
        return BoundingBox.from_xywh(left, top, width, height)

    return factory


@pytest.fixture()
def make_detection() -> Callable[..., Detection]:
    def factory(
        left: float, top: float, width: float = 10.0, height: float = 10.0, score: float = 0.9
    ) -> Detection:
        return Detection(BoundingBox.from_xywh(left, top, width, height), score)

    return factory


@pytest.fixture()
def tracker_config() -> TrackerConfig:
    """Default tracker with immediate confirmation."""
    return TrackerConfig(min_hits=1)


@pytest.fixture()
def small_sim() -> SimParams:
    """Three well-separated fish over forty noiseless frames."""
    return SimParams(
        n_fish=3,
        n_frames=40,
        arena_width=640.0,
        arena_height=480.0,
        speed_mean=3.0,
        seed=7,
    )


@pytest.fixture()
def two_fish_gt() -> TrajectorySet:
    """Two fish swimming right on parallel lanes for ten frames."""
    gt = TrajectorySet()
    for frame in range(1, 11):
        gt.add(frame, 1, BoundingBox.from_xywh(10.0 + 2.0 * frame, 10.0, 20.0, 10.0))
        gt.add(frame, 2, BoundingBox.from_xywh(10.0 + 2.0 * frame, 100.0, 20.0, 10.0))
    return gt
