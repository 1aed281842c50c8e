"""Centralized configuration — loaded once, imported everywhere.

Usage:
    from normalsv.config import settings
    settings.QUAD_ABS_TOL  # float

Every field can be overridden with a ``NORMALSV_``-prefixed environment
variable or a ``.env`` file, e.g. ``NORMALSV_THREADS=4``.
"""

from __future__ import annotations

import os

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """All tunables live here.  Override via .env or env vars."""

    # --- Workers ---
    THREADS: int | None = Field(default=None, gt=0)

    # --- Logging ---
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s  %(levelname)-8s  %(name)s  %(message)s"

    # --- Damping ---
    DEFAULT_ALPHA: float = 5.0               # bp-scale strikes (Table 1)
    DEFAULT_ALPHA_UNIT_SCALE: float = 1.5    # unit-scale assets (S0 ~ 1)
    UNIT_SCALE_THRESHOLD: float = 0.1
    MAX_ALPHA_FRACTION: float = 0.4
    FFT_WINDOW_TOL: float = 1e-7             # max estimated FFT error inside the strike window

    # --- Quadrature reference pricer ---
    QUAD_ABS_TOL: float = 1e-10
    QUAD_MAX_EVALS: int = 2**20
    QUAD_V_START: float = 200.0
    QUAD_PSI_CUTOFF: float = 1e-14
    QUAD_INITIAL_PANELS: int = 256

    # --- Monte-Carlo ---
    MC_PATHS: int = 10_000                   # per repetition
    MC_REPETITIONS: int = 20
    MC_PARTITIONS: int = 8

    # --- Surfaces ---
    SURFACE_STRIKES: int = 25
    SURFACE_MATURITIES: int = 15
    INTRINSIC_CLAMP: float = 1e-10

    model_config = {
        "env_prefix": "NORMALSV_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }

    @property
    def worker_count(self) -> int:
        if self.THREADS is not None:
            return self.THREADS
        return min(8, os.cpu_count() or 1)


settings = Settings()
