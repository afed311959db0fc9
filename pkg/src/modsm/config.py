"""
Configuration
-------------
Environment-driven limits and logging setup. Getters re-read the
environment on every call, and an explicit argument always wins.

Environment:
    MODSM_CAP        max candidate interpretations per enumeration (2**20)
    MODSM_LOOP_CAP   max atoms for loop enumeration (20)
    MODSM_RULE_CAP   max rules produced by one normal-program translation (100000)
    MODSM_WORKERS    worker threads for per-input fan-out (1)
    MODSM_LOG_LEVEL  log level used by the command line (WARNING)
"""

import logging
import os

from modsm.errors import CapExceeded, ConfigError

DEFAULT_CAP = 2**20
DEFAULT_LOOP_CAP = 20
DEFAULT_RULE_CAP = 100_000
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {value!r}") from e


def get_cap(cap: int | None = None) -> int:
    return cap if cap is not None else _int_env("MODSM_CAP", DEFAULT_CAP)


def get_loop_cap(cap: int | None = None) -> int:
    return cap if cap is not None else _int_env("MODSM_LOOP_CAP", DEFAULT_LOOP_CAP)


def get_rule_cap(cap: int | None = None) -> int:
    return cap if cap is not None else _int_env("MODSM_RULE_CAP", DEFAULT_RULE_CAP)


def get_workers(workers: int | None = None) -> int:
    value = workers if workers is not None else _int_env("MODSM_WORKERS", DEFAULT_WORKERS)
    return max(1, value)


def ensure_within(what: str, required: int, limit: int) -> None:
    """Raise CapExceeded when ``required`` exceeds ``limit``."""
    if required > limit:
        raise CapExceeded(what, limit, required)


def setup_logging(level: str | None = None) -> None:
    """Install the stderr log handler. Only entry points call this."""
    level = (level or os.getenv("MODSM_LOG_LEVEL") or DEFAULT_LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"Unknown log level {level!r}")
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        datefmt=LOG_DATEFMT,
        force=True,
    )
