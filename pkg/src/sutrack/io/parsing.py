"""Line-oriented CSV parsing helpers shared by the readers."""
from __future__ import annotations

import math
from collections.abc import Iterator
from typing import TYPE_CHECKING

from sutrack.schema.errors import InputFormatError

if TYPE_CHECKING:
    from pathlib import Path


def read_lines(path: Path) -> list[str]:
    try:
        return path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError as exc:
        raise InputFormatError(f"File not found: {path}", context={"path": str(path)}) from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise InputFormatError(f"Cannot read {path}: {exc}", context={"path": str(path)}) from exc


def format_error(path: Path, line_number: int, reason: str) -> InputFormatError:
    return InputFormatError(
        f"{path}:{line_number}: {reason}", context={"path": str(path), "line": line_number}
    )


def iter_rows(path: Path, n_fields: int | None = None) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, fields)`` for every non-blank line of *path*.

    With *n_fields* set, rows of any other width are rejected.
    """
    for line_number, line in enumerate(read_lines(path), start=1):
        if not line.strip():
            continue
        fields = [f.strip() for f in line.split(",")]
        if n_fields is not None and len(fields) != n_fields:
            raise format_error(path, line_number, f"expected {n_fields} fields, got {len(fields)}")
        yield line_number, fields


def parse_int(path: Path, line_number: int, name: str, text: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise format_error(path, line_number, f"{name} is not a number: {text!r}") from None
    if not value.is_integer():
        raise format_error(path, line_number, f"{name} must be an integer, got {text!r}")
    return int(value)


def parse_float(path: Path, line_number: int, name: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise format_error(path, line_number, f"{name} is not a number: {text!r}") from None
    if not math.isfinite(value):
        raise format_error(path, line_number, f"{name} must be finite, got {text!r}")
    return value


def parse_frame(path: Path, line_number: int, text: str) -> int:
    frame = parse_int(path, line_number, "frame", text)
    if frame < 1:
        raise format_error(path, line_number, f"frame must be >= 1, got {frame}")
    return frame
