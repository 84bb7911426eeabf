"""Tests for sutrack.association.lifecycle."""
from __future__ import annotations

import pytest

from sutrack.association.lifecycle import TrackLifecycle, TrackStatus, TrackTransitionError
from sutrack.schema.errors import SuTrackError

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def lifecycle() -> TrackLifecycle:
    return TrackLifecycle(track_id=7)


# ---------------------------------------------------------------------------
# Initial state
# ---------------------------------------------------------------------------


class TestInitialState:
    def test_born_tentative(self, lifecycle: TrackLifecycle) -> None:
        assert lifecycle.status is TrackStatus.TENTATIVE

    def test_not_terminal_initially(self, lifecycle: TrackLifecycle) -> None:
        assert lifecycle.is_terminal is False

    def test_repr_contains_status(self, lifecycle: TrackLifecycle) -> None:
        assert "tentative" in repr(lifecycle)
        assert "7" in repr(lifecycle)


# ---------------------------------------------------------------------------
# Transitions
# ---------------------------------------------------------------------------


class TestTransitions:
    def test_tentative_to_confirmed(self, lifecycle: TrackLifecycle) -> None:
        lifecycle.confirm()
        assert lifecycle.status is TrackStatus.CONFIRMED

    def test_confirmed_to_removed(self, lifecycle: TrackLifecycle) -> None:
        lifecycle.confirm()
        lifecycle.remove()
        assert lifecycle.status is TrackStatus.REMOVED
        assert lifecycle.is_terminal is True

    def test_tentative_to_removed(self, lifecycle: TrackLifecycle) -> None:
        lifecycle.remove()
        assert lifecycle.is_terminal is True

    def test_confirmed_cannot_confirm_again(self, lifecycle: TrackLifecycle) -> None:
        lifecycle.confirm()
        with pytest.raises(TrackTransitionError):
            lifecycle.confirm()

    def test_removed_is_final(self, lifecycle: TrackLifecycle) -> None:
        lifecycle.remove()
        with pytest.raises(TrackTransitionError):
            lifecycle.confirm()

    def test_error_names_states_and_track(self, lifecycle: TrackLifecycle) -> None:
        lifecycle.remove()
        with pytest.raises(TrackTransitionError) as exc_info:
            lifecycle.remove()
        assert "removed" in str(exc_info.value)
        assert exc_info.value.context["track_id"] == 7
        assert exc_info.value.from_status is TrackStatus.REMOVED
        assert isinstance(exc_info.value, SuTrackError)
