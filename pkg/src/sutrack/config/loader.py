"""Configuration loader for sutrack.

``ConfigLoader`` reads the sectioned YAML config file (JSON is accepted as
YAML), or auto-discovers one in well-known locations.  ``load_config`` is
the functional entry point used by the CLI.

Shipped in this module
----------------------
- ConfigLoader  : file loader with auto-discovery
- load_config   : ``path -> (TrackerConfig, SimParams)``
- CONFIG_ENV_VAR: ``SUT_CONFIG``, the env var naming a config path
"""
from __future__ import annotations

import logging
import os
from pathlib import Path

import yaml

from sutrack.config.defaults import DEFAULT_CONFIG
from sutrack.config.schema import validate_config
from sutrack.schema.config import SimParams, SuTrackConfig, TrackerConfig
from sutrack.schema.errors import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "SUT_CONFIG"

# Ordered list of paths searched by load_auto()
_AUTO_SEARCH_PATHS: tuple[str, ...] = (
    "sutrack.yaml",
    "sutrack.yml",
    ".sutrack.yaml",
    ".sutrack.yml",
)


class ConfigLoader:
    """Loads ``SuTrackConfig`` from files.

    Examples
    --------
    >>> loader = ConfigLoader()
    >>> loader.load_auto(search_dir="/nonexistent").tracker.max_age
    30
    """

    def load_yaml(self, path: str | Path) -> SuTrackConfig:
        """Load configuration from a YAML (or JSON) file.

        An empty file yields the full defaults.

        Raises
        ------
        ConfigurationError
            If the file cannot be read, does not hold a mapping, or fails
            validation.
        """
        resolved = Path(path)
        if not resolved.is_file():
            raise ConfigurationError(
                f"Config file not found: {resolved}",
                context={"path": str(resolved)},
            )
        try:
            with resolved.open(encoding="utf-8") as fh:
                raw: object = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigurationError(
                f"Failed to parse config at {resolved}: {exc}",
                context={"path": str(resolved)},
            ) from exc

        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ConfigurationError(
                f"Config at {resolved} must be a mapping of sections",
                context={"path": str(resolved)},
            )
        logger.debug("Loaded config from %s", resolved)
        return validate_config({str(key): value for key, value in raw.items()})

    def load_auto(self, search_dir: str | Path | None = None) -> SuTrackConfig:
        """Auto-discover and load configuration.

        Discovery order:

        1. The path named by ``$SUT_CONFIG``, if set.
        2. ``sutrack.yaml``, ``sutrack.yml`` and hidden variants in
           *search_dir* (defaults to the working directory).
        3. ``DEFAULT_CONFIG``.
        """
        env_path = os.environ.get(CONFIG_ENV_VAR)
        if env_path:
            logger.info("Loading config from $%s=%s", CONFIG_ENV_VAR, env_path)
            return self.load_yaml(env_path)

        base_dir = Path(search_dir) if search_dir is not None else Path.cwd()
        for candidate_name in _AUTO_SEARCH_PATHS:
            candidate = base_dir / candidate_name
            if candidate.is_file():
                logger.info("Auto-loaded sutrack config from %s", candidate)
                return self.load_yaml(candidate)

        logger.debug("No config file found; using DEFAULT_CONFIG.")
        return DEFAULT_CONFIG


def load_config(path: str | Path | None) -> tuple[TrackerConfig, SimParams]:
    """Load a config file and split it into tracker and simulator parts.

    ``None`` means auto-discovery (see :meth:`ConfigLoader.load_auto`).
    """
    loader = ConfigLoader()
    config = loader.load_auto() if path is None else loader.load_yaml(path)
    return config.tracker, config.sim


def dump_config(config: SuTrackConfig) -> str:
    """Render *config* in the on-disk section layout."""
    return yaml.safe_dump(config.to_sections(), sort_keys=False)
