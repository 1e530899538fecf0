"""Configuration for the oracle, the command line and logging.

Values come from the environment (optionally a .env file) and are read at call
time, so a test can patch os.environ between calls.
"""

import os
from dotenv import load_dotenv

from src.engines.errors import ConfigurationError

# Load environment variables from .env file
load_dotenv()

# Hard cap on oracle windows: 3^16 nested pairs
HARD_MAX_WINDOW = 16

DEFAULT_MAX_WINDOW = 16
DEFAULT_ALL_PAIRS_MAX_WINDOW = 10
DEFAULT_WORKERS = 1
DEFAULT_LOG_DIR = "logs"


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"{name} must be >= 1, got {value}")
    return value


def get_environment() -> str:
    return os.getenv("ENVIRONMENT", "development")


def get_max_window() -> int:
    """Window bound for the oracle, clamped to the hard cap."""
    return min(_positive_int("HYPERDYN_MAX_WINDOW", DEFAULT_MAX_WINDOW), HARD_MAX_WINDOW)


def get_all_pairs_max_window() -> int:
    """Window bound for the unrestricted pair scan, never above the nested bound."""
    return min(_positive_int("HYPERDYN_ALL_PAIRS_MAX_WINDOW", DEFAULT_ALL_PAIRS_MAX_WINDOW), get_max_window())


def get_workers() -> int:
    return _positive_int("HYPERDYN_WORKERS", DEFAULT_WORKERS)


def get_log_dir() -> str:
    return os.getenv("HYPERDYN_LOG_DIR", DEFAULT_LOG_DIR)
