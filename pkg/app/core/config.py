"""Application configuration using Pydantic Settings."""

import os
from functools import lru_cache
from typing import Any, Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


def parse_threads(v: Any) -> Any:
    """Accept ``auto`` (one worker per CPU) or a positive integer."""
    if isinstance(v, str) and v.strip().lower() == "auto":
        return os.cpu_count() or 1
    if v is not None and int(v) < 1:
        raise ValueError("threads must be a positive integer or 'auto'")
    return v


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix ``TOUTER_``)."""

    model_config = SettingsConfigDict(
        env_prefix="TOUTER_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Numerics
    # None means max(p*n, q*n) * eps, the matrix-rank convention on bcirc(T)
    rank_rtol: float | None = None
    imag_cleanup_rtol: float = 1e-9
    default_oversample: int = 10
    default_seed: int = 0

    # Parallel slice loops
    threads: int = 1

    # Benchmarks
    bench_min_trials: int = 3
    bench_default_trials: int = 5

    # Logging
    log_level: str = "WARNING"
    log_format: Literal["json", "console"] = "console"

    @field_validator("threads", mode="before")
    @classmethod
    def check_threads(cls, v: Any) -> Any:
        return parse_threads(v)

    @field_validator("rank_rtol")
    @classmethod
    def check_rank_rtol(cls, v: float | None) -> float | None:
        """Reject non-positive relative rank tolerances."""
        if v is not None and v <= 0:
            raise ValueError("rank_rtol must be positive")
        return v


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()

