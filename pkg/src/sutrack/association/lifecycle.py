"""Track lifecycle state machine.

States
------
TENTATIVE : born, not yet observed for ``min_hits`` consecutive frames.
CONFIRMED : emitted on every frame it is observed.
REMOVED   : dropped by the tracker (terminal).

Valid transitions
-----------------
TENTATIVE → CONFIRMED, REMOVED
CONFIRMED → REMOVED
"""
from __future__ import annotations

import logging
from enum import Enum

from sutrack.schema.errors import SuTrackError

logger = logging.getLogger(__name__)


class TrackStatus(str, Enum):
    TENTATIVE = "tentative"
    CONFIRMED = "confirmed"
    REMOVED = "removed"


class TrackTransitionError(SuTrackError):
    """Raised when an invalid lifecycle transition is attempted."""

    def __init__(self, track_id: int, from_status: TrackStatus, to_status: TrackStatus) -> None:
        self.from_status = from_status
        self.to_status = to_status
        super().__init__(
            f"Track {track_id}: invalid transition {from_status.value!r} → {to_status.value!r}",
            context={"track_id": track_id},
        )


_VALID_TRANSITIONS: dict[TrackStatus, frozenset[TrackStatus]] = {
    TrackStatus.TENTATIVE: frozenset({TrackStatus.CONFIRMED, TrackStatus.REMOVED}),
    TrackStatus.CONFIRMED: frozenset({TrackStatus.REMOVED}),
    TrackStatus.REMOVED: frozenset(),
}


class TrackLifecycle:
    """Status of one track.

    Example
    -------
    ::

        lifecycle = TrackLifecycle(7)
        lifecycle.confirm()
        lifecycle.remove()
    """

    def __init__(self, track_id: int) -> None:
        self._track_id = track_id
        self._status = TrackStatus.TENTATIVE

    @property
    def status(self) -> TrackStatus:
        return self._status

    @property
    def is_terminal(self) -> bool:
        return self._status is TrackStatus.REMOVED

    def transition_to(self, new_status: TrackStatus) -> None:
        if new_status not in _VALID_TRANSITIONS[self._status]:
            raise TrackTransitionError(self._track_id, self._status, new_status)
        previous = self._status
        self._status = new_status
        logger.debug("Track %d: %s → %s", self._track_id, previous.value, new_status.value)

    def confirm(self) -> None:
        self.transition_to(TrackStatus.CONFIRMED)

    def remove(self) -> None:
        self.transition_to(TrackStatus.REMOVED)

    def __repr__(self) -> str:
        return f"TrackLifecycle(track_id={self._track_id}, status={self._status.value!r})"
