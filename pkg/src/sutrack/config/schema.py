"""Validation helpers for sutrack configuration.

``validate_config`` turns the raw section mapping read from a config file
into a ``SuTrackConfig``.  Each section is validated on its own, and error
messages name keys the way the user wrote them (``fishiou.w9``) rather than
by model nesting.
"""
from __future__ import annotations

from typing import TypeVar

from pydantic import BaseModel, ValidationError

from sutrack.config.defaults import CONFIG_SECTIONS
from sutrack.schema.config import (
    FishIouParams,
    SimParams,
    SuTrackConfig,
    TrackerConfig,
    UkfSettings,
)
from sutrack.schema.errors import ConfigurationError

__all__ = ["validate_config"]

_ModelT = TypeVar("_ModelT", bound=BaseModel)

# Nested blocks of TrackerConfig that must come from their own sections.
_NESTED_TRACKER_FIELDS = frozenset({"fish_iou_params", "ukf_params"})


def _dotted(section: str, loc: tuple[int | str, ...]) -> str:
    return ".".join([section, *(str(part) for part in loc)])


def _validate_section(
    model: type[_ModelT],
    section: str,
    data: dict[str, object],
    extra: dict[str, object] | None = None,
) -> _ModelT:
    try:
        return model.model_validate({**data, **(extra or {})})
    except ValidationError as exc:
        errors = exc.errors()
        unknown = [
            _dotted(section, err["loc"]) for err in errors if err["type"] == "extra_forbidden"
        ]
        if unknown:
            names = ", ".join(repr(name) for name in unknown)
            raise ConfigurationError(
                f"Unknown configuration key {names}",
                context={"keys": unknown},
            ) from exc
        details = "; ".join(
            f"{_dotted(section, err['loc']) if err['loc'] else section}: {err['msg']}"
            for err in errors
        )
        raise ConfigurationError(
            f"Configuration validation failed: {details}",
            context={"section": section, "errors": errors},
        ) from exc


def _section(data: dict[str, object], name: str) -> dict[str, object]:
    raw = data.get(name)
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigurationError(
            f"Configuration section {name!r} must be a mapping, got {type(raw).__name__}",
            context={"section": name},
        )
    return {str(key): value for key, value in raw.items()}


def validate_config(data: dict[str, object]) -> SuTrackConfig:
    """Validate a raw section mapping against the sutrack schema.

    Parameters
    ----------
    data:
        Mapping with any of the sections ``tracker``, ``fishiou``, ``ukf``
        and ``sim``.  Missing sections take their defaults.

    Returns
    -------
    SuTrackConfig

    Raises
    ------
    ConfigurationError
        On unknown sections or keys, or values failing validation.  The
        original ``ValidationError`` is attached as ``__cause__``.

    Examples
    --------
    >>> validate_config({"tracker": {"max_age": 10}}).tracker.max_age
    10
    """
    unknown_sections = sorted(set(data) - set(CONFIG_SECTIONS))
    if unknown_sections:
        raise ConfigurationError(
            f"Unknown configuration section {', '.join(map(repr, unknown_sections))}",
            context={"keys": unknown_sections},
        )

    tracker_section = _section(data, "tracker")
    nested = sorted(_NESTED_TRACKER_FIELDS & set(tracker_section))
    if nested:
        keys = [f"tracker.{name}" for name in nested]
        raise ConfigurationError(
            f"Unknown configuration key {', '.join(map(repr, keys))}",
            context={"keys": keys},
        )

    fish_iou = _validate_section(FishIouParams, "fishiou", _section(data, "fishiou"))
    ukf = _validate_section(UkfSettings, "ukf", _section(data, "ukf"))
    tracker = _validate_section(
        TrackerConfig,
        "tracker",
        tracker_section,
        extra={"fish_iou_params": fish_iou, "ukf_params": ukf},
    )
    sim = _validate_section(SimParams, "sim", _section(data, "sim"))
    return SuTrackConfig(tracker=tracker, sim=sim)
