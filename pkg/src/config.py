"""
Configuration manager for the Tor-algebra classifier.
Handles environment variables and experiment defaults.
"""

import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

from errors import ParameterRangeError
from utils.console import get_console


class Config:
    """Application configuration loaded from environment variables."""

    def __init__(self) -> None:
        """Initialize configuration by loading environment variables."""
        self._load_environment()

    def _load_environment(self) -> None:
        """Load environment variables from .env file if it exists."""
        # .env lives in the project root, next to requirements.txt
        project_root = Path(__file__).parent.parent
        env_file = project_root / ".env"

        if env_file.exists():
            load_dotenv(env_file)
            self.env_file: Optional[Path] = env_file
        else:
            self.env_file = None

    @staticmethod
    def _int(name: str, default: int) -> int:
        """Read an integer variable, raising ParameterRangeError on anything else."""
        raw = os.getenv(name, str(default))
        try:
            return int(raw)
        except ValueError as e:
            raise ParameterRangeError(f"{name} must be an integer, got: {raw!r}") from e

    @property
    def default_prime(self) -> int:
        """Field size used for random experiments."""
        return self._int("TORCLASS_PRIME", 32003)

    @property
    def default_trials(self) -> int:
        """Number of random trials per (s1, s) row."""
        return self._int("TORCLASS_TRIALS", 25)

    @property
    def default_seed(self) -> int:
        """Base seed for experiments."""
        return self._int("TORCLASS_SEED", 1)

    @property
    def workers(self) -> int:
        """Thread count for running trials."""
        return self._int("TORCLASS_WORKERS", 1)

    @property
    def retry_cap(self) -> int:
        """Number of draws before a genericity failure is reported."""
        return self._int("TORCLASS_RETRY_CAP", 100)

    @property
    def max_socle_degree(self) -> int:
        """Hard cap on the socle degree swept by table1."""
        return self._int("TORCLASS_MAX_S", 12)

    @property
    def truncation_cap(self) -> int:
        """Largest truncation tried when an ideal file gives none."""
        return self._int("TORCLASS_TRUNCATION_CAP", 40)

    @property
    def verbose(self) -> bool:
        """Check if diagnostic messages are enabled."""
        verbose_str = os.getenv("TORCLASS_VERBOSE", "true")
        return verbose_str.lower() in ("true", "1", "yes")

    def validate(self) -> bool:
        """Validate configuration and show helpful error messages."""
        console = get_console()
        is_valid = True

        try:
            checks = [
                ("TORCLASS_PRIME", self.default_prime, 2),
                ("TORCLASS_TRIALS", self.default_trials, 1),
                ("TORCLASS_WORKERS", self.workers, 1),
                ("TORCLASS_RETRY_CAP", self.retry_cap, 1),
                ("TORCLASS_MAX_S", self.max_socle_degree, 2),
                ("TORCLASS_TRUNCATION_CAP", self.truncation_cap, 3),
            ]
        except ValueError as e:
            console.print(f"❌ {e}")
            return False

        for name, value, lowest in checks:
            if value < lowest:
                console.print(f"❌ {name} must be at least {lowest}, got: {value}")
                is_valid = False

        return is_valid


# Global configuration instance
_config_instance: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance (singleton pattern)."""
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def reset_config() -> None:
    """Forget the cached configuration so the environment is read again."""
    global _config_instance
    _config_instance = None


def validate_config() -> bool:
    """Validate global configuration."""
    config = get_config()
    if not config.validate():
        console = get_console()
        console.print("\n💡 To fix this:")
        console.print("   1. Check the TORCLASS_* variables in your shell or .env")
        console.print("   2. See .env.example for the accepted values")
        return False
    return True
