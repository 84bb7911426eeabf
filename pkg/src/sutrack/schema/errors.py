"""Error taxonomy for sutrack.

All exceptions raised by sutrack derive from ``SuTrackError`` so callers can
catch the whole family with a single ``except SuTrackError`` clause while
still telling individual failure modes apart.

Every subclass carries a class-level ``exit_code`` that the CLI uses when
the error escapes a command.

Shipped in this module
----------------------
- ErrorSeverity            : ordered severity enum
- SuTrackError             : root exception with severity, context, exit code
- ConfigurationError       : bad or unknown configuration (exit 1)
- SequencingError          : frames presented out of order (exit 1)
- InputFormatError         : malformed or missing input files (exit 2)
- NumericalDegeneracyError : filter covariance cannot be repaired (exit 3)
- InvalidBoxError          : bounding-box invariant violated
"""
from __future__ import annotations

from enum import Enum

EXIT_USAGE = 1
EXIT_INPUT_FORMAT = 2
EXIT_NUMERICAL = 3


class ErrorSeverity(str, Enum):
    """Advisory severity levels for ``SuTrackError`` instances."""

    CRITICAL = "critical"
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"
    INFO = "info"


class SuTrackError(Exception):
    """Root exception for all sutrack failures.

    Parameters
    ----------
    message:
        Human-readable description of what went wrong.
    severity:
        Advisory ``ErrorSeverity`` level.  Defaults to ``HIGH``.
    context:
        Optional dict of structured metadata (paths, line numbers, track
        ids) that helps diagnostics without log scraping.

    Examples
    --------
    >>> try:
    ...     raise SuTrackError("something broke", ErrorSeverity.MEDIUM)
    ... except SuTrackError as exc:
    ...     print(exc.severity.value)
    medium
    """

    exit_code: int = EXIT_USAGE

    def __init__(
        self,
        message: str,
        severity: ErrorSeverity = ErrorSeverity.HIGH,
        context: dict[str, object] | None = None,
    ) -> None:
        super().__init__(message)
        self.severity: ErrorSeverity = severity
        self.context: dict[str, object] = context or {}

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}("
            f"message={str(self)!r}, "
            f"severity={self.severity.value!r})"
        )


class ConfigurationError(SuTrackError):
    """Raised when configuration loading or validation fails.

    Examples: unknown key, threshold ordering violated, bad YAML.
    """


class SequencingError(SuTrackError):
    """Raised when a tracker receives frames out of strictly increasing order."""


class InputFormatError(SuTrackError):
    """Raised for unreadable, missing, or malformed input files.

    ``context`` carries ``path`` and, for parse failures, the 1-based ``line``.
    """

    exit_code = EXIT_INPUT_FORMAT


class NumericalDegeneracyError(SuTrackError):
    """Raised when a covariance cannot be factorized even after repair,
    or the innovation covariance is singular."""

    exit_code = EXIT_NUMERICAL


class InvalidBoxError(SuTrackError, ValueError):
    """Raised when a bounding box has non-positive extent or non-finite corners."""
