"""Runtime settings read from SUPERCTRL_* environment variables."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from COMMON.Description import DEFAULT_GENERATORS, ENV_PREFIX, MAX_GENERATORS, STEPS_PER_SEGMENT

logger = logging.getLogger(__name__)

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _int_env(env: Mapping[str, str], key: str, default: int, low: int, high: Optional[int] = None) -> int:
    raw = env.get(ENV_PREFIX + key)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        logger.warning("[CONFIG] %s%s=%r is not an integer, using %d", ENV_PREFIX, key, raw, default)
        return default
    if value < low or (high is not None and value > high):
        logger.warning("[CONFIG] %s%s=%d out of range, using %d", ENV_PREFIX, key, value, default)
        return default
    return value


@dataclass(frozen=True)
class Settings:
    """
    Session defaults; spec-file options override them per run.
    generators is capped at MAX_GENERATORS (10): simulation cost grows as 3^L.
    """

    generators: int = DEFAULT_GENERATORS
    log_level: str = "WARNING"
    steps_per_segment: int = STEPS_PER_SEGMENT
    seed: int = 0

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None) -> "Settings":
        env = os.environ if env is None else env
        level = env.get(ENV_PREFIX + "LOG_LEVEL", "WARNING").strip().upper()
        if level not in _LEVELS:
            logger.warning("[CONFIG] unknown log level %r, using WARNING", level)
            level = "WARNING"
        return cls(
            generators=_int_env(env, "GENERATORS", DEFAULT_GENERATORS, 0, MAX_GENERATORS),
            log_level=level,
            steps_per_segment=_int_env(env, "STEPS_PER_SEGMENT", STEPS_PER_SEGMENT, 1),
            seed=_int_env(env, "SEED", 0, 0),
        )
