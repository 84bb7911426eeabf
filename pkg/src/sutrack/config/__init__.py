"""Configuration loading, defaults and validation."""
from __future__ import annotations

from sutrack.config.defaults import DEFAULT_CONFIG
from sutrack.config.loader import CONFIG_ENV_VAR, ConfigLoader, dump_config, load_config
from sutrack.config.schema import validate_config

__all__ = [
    "CONFIG_ENV_VAR",
    "DEFAULT_CONFIG",
    "ConfigLoader",
    "dump_config",
    "load_config",
    "validate_config",
]
