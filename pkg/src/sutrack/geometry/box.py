"""Axis-aligned bounding boxes in pixel coordinates.

Corner form ``(x1, y1, x2, y2)`` with a top-left origin is the only internal
representation; conversions to and from the MOT ``(left, top, width,
height)`` layout and the filter measurement ``(c_x, c_y, area, aspect)``
live here so there is a single conversion point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sutrack.schema.errors import InvalidBoxError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import NDArray


@dataclass(frozen=True, slots=True)
class BoundingBox:
    """Axis-aligned box with strictly positive width and height.

    Examples
    --------
    >>> box = BoundingBox(0.0, 0.0, 10.0, 20.0)
    >>> box.center, box.area, box.aspect
    ((5.0, 10.0), 200.0, 0.5)
    """

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        coords = (self.x1, self.y1, self.x2, self.y2)
        if not all(math.isfinite(c) for c in coords):
            raise InvalidBoxError(
                f"Box coordinates must be finite, got {coords}",
                context={"box": coords},
            )
        if not (self.x2 > self.x1 and self.y2 > self.y1):
            raise InvalidBoxError(
                f"Box must have positive width and height, got {coords}",
                context={"box": coords},
            )

    # ------------------------------------------------------------------
    # Derived accessors
    # ------------------------------------------------------------------

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0)

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def aspect(self) -> float:
        """Width over height."""
        return self.width / self.height

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    # ------------------------------------------------------------------
    # Conversions
    # ------------------------------------------------------------------

    @classmethod
    def from_xywh(cls, left: float, top: float, width: float, height: float) -> BoundingBox:
        """Build from the MOT ``(left, top, width, height)`` layout."""
        return cls(left, top, left + width, top + height)

    def to_xywh(self) -> tuple[float, float, float, float]:
        return (self.x1, self.y1, self.width, self.height)

    @classmethod
    def from_measurement(
        cls, cx: float, cy: float, area: float, aspect: float
    ) -> BoundingBox:
        """Invert ``(c_x, c_y, area, aspect)``: ``w = sqrt(a*r)``, ``h = sqrt(a/r)``."""
        width = math.sqrt(area * aspect)
        height = math.sqrt(area / aspect)
        return cls(cx - width / 2.0, cy - height / 2.0, cx + width / 2.0, cy + height / 2.0)

    def to_measurement(self) -> tuple[float, float, float, float]:
        cx, cy = self.center
        return (cx, cy, self.area, self.aspect)

    @classmethod
    def from_center(cls, cx: float, cy: float, width: float, height: float) -> BoundingBox:
        return cls(cx - width / 2.0, cy - height / 2.0, cx + width / 2.0, cy + height / 2.0)

    def to_array(self) -> NDArray[np.float64]:
        return np.array([self.x1, self.y1, self.x2, self.y2], dtype=np.float64)

    def translated(self, dx: float, dy: float) -> BoundingBox:
        return BoundingBox(self.x1 + dx, self.y1 + dy, self.x2 + dx, self.y2 + dy)


def boxes_to_array(boxes: Iterable[BoundingBox]) -> NDArray[np.float64]:
    """Stack boxes into an ``(N, 4)`` corner array (``(0, 4)`` when empty)."""
    rows = [box.to_array() for box in boxes]
    if not rows:
        return np.zeros((0, 4), dtype=np.float64)
    return np.vstack(rows)
