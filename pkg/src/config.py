"""
Centralized configuration management for SolitonJitter.
Handles environment variable loading, validation, and provides type-safe configuration access.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import pytz

from src.errors import ConfigurationError


def _parse_int(name: str, default: str) -> int:
    raw = os.environ.get(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


def _parse_float(name: str, default: str) -> float:
    raw = os.environ.get(name, default)
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be a number, got {raw!r}")


@dataclass
class SolitonJitterConfig:
    """Centralized configuration class for SolitonJitter."""

    output_dir: str
    log_path: str
    log_timezone: str
    sweep_workers: int
    convergence_tolerance: float

    @classmethod
    def from_environment(cls) -> "SolitonJitterConfig":
        """Create configuration from environment variables with validation."""
        config = cls(
            output_dir=os.environ.get("SOLITONJITTER_OUTPUT_DIR", "output"),
            log_path=os.environ.get("LOG_PATH", "log/solitonjitter.log"),
            log_timezone=os.environ.get("LOG_TIMEZONE", "UTC"),
            sweep_workers=_parse_int("SWEEP_WORKERS", str(os.cpu_count() or 1)),
            convergence_tolerance=_parse_float("CONVERGENCE_TOLERANCE", "0.005"),
        )

        config._validate()
        return config

    def _validate(self) -> None:
        """Validate configuration values."""
        if self.sweep_workers <= 0:
            raise ConfigurationError("SWEEP_WORKERS must be a positive integer")

        if not 0.0 < self.convergence_tolerance < 1.0:
            raise ConfigurationError("CONVERGENCE_TOLERANCE must lie in (0, 1)")

        if self.log_timezone not in pytz.all_timezones_set:
            raise ConfigurationError(f"Unknown LOG_TIMEZONE: {self.log_timezone}")

        if not self.output_dir.strip():
            raise ConfigurationError("SOLITONJITTER_OUTPUT_DIR cannot be empty")

        # Validate log path
        log_dir = Path(self.log_path).parent
        if not log_dir.exists():
            try:
                log_dir.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                raise ConfigurationError(f"Cannot create log directory {log_dir}: {e}")

    def get_env_info(self) -> dict[str, str]:
        """Get environment information for logging purposes."""
        return {
            "SOLITONJITTER_OUTPUT_DIR": self.output_dir,
            "LOG_PATH": self.log_path,
            "LOG_TIMEZONE": self.log_timezone,
            "SWEEP_WORKERS": str(self.sweep_workers),
            "CONVERGENCE_TOLERANCE": str(self.convergence_tolerance),
        }


# Global configuration instance
_config: Optional[SolitonJitterConfig] = None


def get_config() -> SolitonJitterConfig:
    """Get the global configuration instance, creating it if necessary."""
    global _config
    if _config is None:
        _config = SolitonJitterConfig.from_environment()
    return _config


def reset_config() -> None:
    """Reset the global configuration instance. Mainly used for testing."""
    global _config
    _config = None
