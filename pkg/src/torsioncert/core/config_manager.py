"""Run configuration: .env file, environment variables, then CLI overrides."""

__all__ = ["RunConfig", "load_config", "ENV_PREFIX"]

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Optional, Tuple

from dotenv import load_dotenv

from .constants import T1_CANDIDATE_BUDGET, T2_SEARCH_PRIMES
from .logging_config import get_logger

logger = get_logger(__name__)

ENV_PREFIX = "TORSIONCERT_"


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every command of a run."""

    cache_dir: Path = field(default_factory=lambda: Path.home() / ".cache" / "torsioncert")
    output_dir: Path = field(default_factory=lambda: Path("certificates"))
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    log_level: str = "INFO"
    t1_budget: int = T1_CANDIDATE_BUDGET
    t2_primes: Tuple[int, ...] = T2_SEARCH_PRIMES
    factor_oracle: Optional[str] = None
    use_cache: bool = True

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Return a copy with every non-None override applied."""
        values = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **values)

    @property
    def factorization_enabled(self) -> bool:
        """True when an external factorization oracle has been configured."""
        return self.factor_oracle == "sympy"


def _env(name: str) -> Optional[str]:
    value = os.environ.get(ENV_PREFIX + name, "").strip()
    return value or None


def _int_env(name: str, default: int) -> int:
    raw = _env(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring %s%s=%r (not an integer)", ENV_PREFIX, name, raw)
        return default


def load_config(env_file: Optional[Path] = None) -> RunConfig:
    """Build a RunConfig from an optional .env file and the environment.

    Variables already present in the environment win over the .env file.

    Args:
        env_file: Explicit .env path; when None, python-dotenv searches upwards
            from the working directory.

    Returns:
        RunConfig with environment values applied
    """
    if env_file is not None:
        load_dotenv(env_file, override=False)
    else:
        load_dotenv(override=False)

    config = RunConfig()
    primes_raw = _env("T2_PRIMES")
    t2_primes = config.t2_primes
    if primes_raw:
        try:
            t2_primes = tuple(int(q) for q in primes_raw.split(","))
        except ValueError:
            logger.warning("Ignoring %sT2_PRIMES=%r", ENV_PREFIX, primes_raw)

    cache_raw = _env("CACHE_DIR")
    output_raw = _env("OUTPUT_DIR")
    config = config.with_overrides(
        cache_dir=Path(cache_raw).expanduser() if cache_raw else None,
        output_dir=Path(output_raw).expanduser() if output_raw else None,
        jobs=max(1, _int_env("JOBS", config.jobs)),
        log_level=_env("LOG_LEVEL"),
        t1_budget=_int_env("T1_BUDGET", config.t1_budget),
        t2_primes=t2_primes,
        factor_oracle=_env("FACTOR_ORACLE"),
    )
    logger.debug("Loaded configuration: %s", config)
    return config
