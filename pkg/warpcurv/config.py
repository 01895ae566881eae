"""
Configuration Module

Process-level settings for warpcurv, loaded from environment variables
(a local .env file is honoured). Run files are handled by runconfig.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

# Load environment variables on module import
load_dotenv()

logger = logging.getLogger(__name__)


def _env_bool(name: str, default: bool = False) -> bool:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


@dataclass
class ExecutionSettings:
    """Worker and timeout settings for verification runs."""

    threads: int = 1
    check_timeout: float = 600.0

    def __post_init__(self):
        """Load from environment if not provided."""
        raw_threads = os.getenv("WARPCURV_THREADS", "")
        if raw_threads:
            try:
                self.threads = max(1, int(raw_threads))
            except ValueError:
                logger.warning(f"⚠️ Ignoring WARPCURV_THREADS={raw_threads!r} (not an integer)")
        raw_timeout = os.getenv("WARPCURV_CHECK_TIMEOUT", "")
        if raw_timeout:
            try:
                self.check_timeout = float(raw_timeout)
            except ValueError:
                logger.warning(f"⚠️ Ignoring WARPCURV_CHECK_TIMEOUT={raw_timeout!r}")

    def resolve_threads(self, override: Optional[int]) -> int:
        """The --threads flag wins over the environment."""
        if override is not None:
            return max(1, int(override))
        return self.threads


@dataclass
class ReportSettings:
    """Defaults for report output."""

    timestamp: bool = True

    def __post_init__(self):
        self.timestamp = not _env_bool("WARPCURV_NO_TIMESTAMP", False)


@dataclass
class Settings:
    """
    Master configuration class that aggregates all settings.

    Usage:
        settings = get_settings()
        settings.configure_logging()
        threads = settings.execution.resolve_threads(args.threads)
    """

    execution: ExecutionSettings = field(default_factory=ExecutionSettings)
    reports: ReportSettings = field(default_factory=ReportSettings)
    log_level: str = "INFO"

    def __post_init__(self):
        """Load logging settings from environment."""
        self.log_level = os.getenv("LOG_LEVEL", self.log_level).upper()

    @classmethod
    def from_environment(cls) -> "Settings":
        """Create settings instance loaded from environment."""
        return cls()

    def configure_logging(self) -> None:
        """Configure logging based on settings."""
        level = getattr(logging, self.log_level, logging.INFO)
        logging.basicConfig(
            level=level,
            format="%(levelname)s:%(name)s:%(message)s",
        )

        # numpy / asyncio chatter is never useful in reports
        logging.getLogger("asyncio").setLevel(logging.WARNING)
        logging.getLogger("concurrent.futures").setLevel(logging.WARNING)


# Global singleton settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance (lazy loaded)."""
    global _settings
    if _settings is None:
        _settings = Settings.from_environment()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
