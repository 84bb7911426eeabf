"""Per-frame trajectory container shared by ground truth and tracker output."""
from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from typing import TYPE_CHECKING, NamedTuple

from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from sutrack.association.track import TrackOutput
    from sutrack.geometry.box import BoundingBox


class TrajectoryEntry(NamedTuple):
    identity: int
    box: BoundingBox
    score: float | None = None


class TrajectorySet:
    """Mapping ``frame -> entries`` with unique identities inside each frame."""

    def __init__(self) -> None:
        self._frames: dict[int, dict[int, TrajectoryEntry]] = {}

    @classmethod
    def from_outputs(cls, outputs: Iterable[TrackOutput]) -> TrajectorySet:
        trajectories = cls()
        for output in outputs:
            trajectories.add(output.frame, output.track_id, output.box, output.score)
        return trajectories

    def add(
        self, frame: int, identity: int, box: BoundingBox, score: float | None = None
    ) -> None:
        if frame < 1:
            raise InputFormatError(
                f"Frame indices start at 1, got {frame}", context={"frame": frame}
            )
        entries = self._frames.setdefault(frame, {})
        if identity in entries:
            raise InputFormatError(
                f"Identity {identity} appears twice in frame {frame}",
                context={"frame": frame, "identity": identity},
            )
        entries[identity] = TrajectoryEntry(identity, box, score)

    def frames(self) -> list[int]:
        return sorted(self._frames)

    def entries(self, frame: int) -> list[TrajectoryEntry]:
        """Entries of *frame* in identity order (empty if the frame is absent)."""
        entries = self._frames.get(frame, {})
        return [entries[k] for k in sorted(entries)]

    def identities(self) -> list[int]:
        return sorted({i for entries in self._frames.values() for i in entries})

    def by_identity(self) -> dict[int, dict[int, TrajectoryEntry]]:
        """Regroup as ``identity -> frame -> entry``."""
        grouped: dict[int, dict[int, TrajectoryEntry]] = {}
        for frame in self.frames():
            for identity, entry in self._frames[frame].items():
                grouped.setdefault(identity, {})[frame] = entry
        return grouped

    def relabeled(self, mapping: dict[int, int]) -> TrajectorySet:
        """Copy with identities renamed through *mapping* (unmapped ids kept)."""
        relabeled = TrajectorySet()
        for frame, entry in self:
            identity = mapping.get(entry.identity, entry.identity)
            relabeled.add(frame, identity, entry.box, entry.score)
        return relabeled

    def is_close(self, other: TrajectorySet, tolerance: float = 1e-6) -> bool:
        """Same frames and identities, coordinates and scores within *tolerance*."""
        if self.frames() != other.frames():
            return False
        for frame in self.frames():
            mine, theirs = self.entries(frame), other.entries(frame)
            if [e.identity for e in mine] != [e.identity for e in theirs]:
                return False
            for a, b in zip(mine, theirs):
                if not all(
                    math.isclose(p, q, abs_tol=tolerance)
                    for p, q in zip(a.box.to_array(), b.box.to_array())
                ):
                    return False
                if (a.score is None) != (b.score is None):
                    return False
                if a.score is not None and not math.isclose(
                    a.score, b.score, abs_tol=tolerance  # type: ignore[arg-type]
                ):
                    return False
        return True

    def __iter__(self) -> Iterator[tuple[int, TrajectoryEntry]]:
        for frame in self.frames():
            for entry in self.entries(frame):
                yield frame, entry

    def __len__(self) -> int:
        return sum(len(entries) for entries in self._frames.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrajectorySet):
            return NotImplemented
        return self._frames == other._frames

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TrajectorySet(frames={len(self._frames)}, entries={len(self)})"
