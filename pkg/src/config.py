"""Runtime configuration read from the environment (and an optional .env)."""

import logging
import os
import sys
import tomllib
from pathlib import Path

import structlog
from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    raw = os.environ.get(name, "")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


OUTPUT_DIR = Path(os.environ.get("ECLAT_OUTPUT_DIR", "results"))
DATA_DIR = Path(os.environ.get("ECLAT_DATA_DIR", "datasets"))
DEFAULT_WORKERS = _env_int("ECLAT_WORKERS", 4)
DEFAULT_PARTITIONS = _env_int("ECLAT_PARTITIONS", 10)
DEFAULT_EXECUTOR = os.environ.get("ECLAT_EXECUTOR", "thread")
MATRIX_LIMIT_BYTES = _env_int("ECLAT_MATRIX_LIMIT_MB", 256) * 1024 * 1024
LOG_LEVEL = os.environ.get("ECLAT_LOG_LEVEL", "info")

_pyproject = Path(__file__).resolve().parent.parent / "pyproject.toml"
with open(_pyproject, "rb") as _f:
    APP_VERSION = tomllib.load(_f)["project"]["version"]


def _stderr_logger(*args):
    return structlog.PrintLogger(sys.stderr)


def configure_logging(level=LOG_LEVEL):
    """Route structlog output to stderr, dropping events below `level`."""
    levels = logging.getLevelNamesMapping()
    name = level.upper()
    if name not in levels:
        raise ValueError(f"Unknown log level: {level!r}")
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(levels[name]),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
