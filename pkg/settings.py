"""Environment-driven settings for the command line and HTTP entry points."""

import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional

from model.errors import ConfigurationError

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _env_int(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got '{raw}'") from e
    if value < minimum:
        raise ConfigurationError(f"{name} must be at least {minimum}, got {value}")
    return value


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ConfigurationError(f"{name} must be true or false, got '{raw}'")


@dataclass(frozen=True)
class Settings:
    """Runtime settings read from the environment."""

    threads: int = 1
    log_level: Optional[str] = None
    enable_weight_cache: bool = True
    mc_reps: int = 2000
    port: int = 5000
    python_env: str = "development"

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from environment variables.

        Returns:
            Settings instance
        """
        level = os.getenv("LOG_LEVEL")
        return cls(
            threads=_env_int("SPECTRALVOL_THREADS", 1),
            log_level=level.strip().upper() if level and level.strip() else None,
            enable_weight_cache=_env_bool("ENABLE_WEIGHT_CACHE", True),
            mc_reps=_env_int("SPECTRALVOL_MC_REPS", 2000),
            port=_env_int("PORT", 5000),
            python_env=os.getenv("PYTHON_ENV", "development"),
        )


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get the global settings instance.

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def reset_settings() -> None:
    """Forget the cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None


def configure_logging(level: Optional[str], default: str = "WARNING") -> None:
    """
    Install a single stderr handler on the root logger.

    Args:
        level: Level name such as ``INFO``; ``None`` uses ``default``
        default: Fallback level name
    """
    name = (level or default).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ConfigurationError(f"unknown log level '{name}'")
    logging.basicConfig(
        level=numeric,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
