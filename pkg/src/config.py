"""
Runtime configuration for lindyn-lab.

Environment is loaded from .env.local (highest priority) or .env in the
project root, then from the process environment. Recognized variables:

    LOG_LEVEL             console log level (default INFO)
    LINDYN_LOG_FILE       base path of the session log (default logs/lindyn-lab.log)
    LINDYN_SUPPORT_CAP    max support size of intermediate vectors (default 1_000_000)
    LINDYN_MEMO_SIZE      max entries of the fast-power memo (default 65536)
    LINDYN_MAX_GAP_BITS   largest δ_t - τ_t a witness may rely on (default 268_435_456)
    LINDYN_SEED           default seed for randomized suites (default 1729)
    LINDYN_WORKERS        worker processes for claim suites (default 1)
"""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import MalformedInputError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent

LOG_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}

# env var name -> Settings field
ENV_FIELDS = {
    "LOG_LEVEL": "log_level",
    "LINDYN_LOG_FILE": "log_file",
    "LINDYN_SUPPORT_CAP": "support_cap",
    "LINDYN_MEMO_SIZE": "memo_size",
    "LINDYN_MAX_GAP_BITS": "max_gap_bits",
    "LINDYN_SEED": "seed",
    "LINDYN_WORKERS": "workers",
}


class Settings(BaseModel):
    """Validated runtime settings"""

    log_level: str = "INFO"
    log_file: str = "logs/lindyn-lab.log"
    support_cap: int = Field(default=1_000_000, ge=1)
    memo_size: int = Field(default=65536, ge=0)
    max_gap_bits: int = Field(default=1 << 28, ge=1)
    seed: int = Field(default=1729, ge=0)
    workers: int = Field(default=1, ge=1)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"unknown log level '{value}'")
        return level

    @property
    def console_level(self) -> int:
        return LOG_LEVELS[self.log_level]

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from environment variables.

        Raises:
            MalformedInputError: If any variable fails validation
        """
        values = {
            field: os.environ[name]
            for name, field in ENV_FIELDS.items()
            if os.environ.get(name)
        }
        try:
            return cls(**values)
        except ValidationError as e:
            raise MalformedInputError(
                f"Invalid configuration in environment.\n"
                f"{e}\n"
                f"Check the LINDYN_* variables in .env.local, .env or your shell."
            ) from e


def load_environment() -> Optional[Path]:
    """
    Load .env.local first (highest priority), then .env as fallback.

    Returns:
        The file that was loaded, or None when only the process environment is used
    """
    env_local = PROJECT_ROOT / ".env.local"
    env_file = PROJECT_ROOT / ".env"

    for candidate in (env_local, env_file):
        if candidate.exists():
            load_dotenv(candidate, override=False)
            logger.debug(f"Loaded environment from: {candidate}")
            return candidate

    logger.debug("No .env.local or .env file found - using process environment only")
    return None


_settings: Optional[Settings] = None  # Singleton cache


def get_settings(force_reload: bool = False) -> Settings:
    """
    Get the process-wide settings instance.

    Args:
        force_reload: If True, re-read the environment even if cached

    Returns:
        Settings instance
    """
    global _settings

    if _settings is not None and not force_reload:
        return _settings

    load_environment()
    _settings = Settings.from_env()
    logger.debug(f"Settings loaded: {_settings.model_dump()}")
    return _settings
