"""Smoke tests — verify the package imports and wires up correctly.

Run with:  uv run pytest normalsv/tests/test_framework.py -v
"""

from __future__ import annotations

import json

import pytest


# ------------------------------------------------------------------
# 1. Models import cleanly
# ------------------------------------------------------------------
def test_models_import():
    from normalsv.models import (
        AveragedAlpha,
        BachelierQuote,
        CarrMadanGrid,
        FftConfig,
        McConfig,
        ModelParams,
        RunConfig,
        SingleAlpha,
    )

    p = ModelParams(s0=1.0, a=0.01, b=1.0, sigma=0.2, rho=0.0, v0=0.04)
    assert p.r == 0.0
    assert FftConfig().grid == CarrMadanGrid()
    assert isinstance(FftConfig().alpha_mode, SingleAlpha)
    assert AveragedAlpha(start=5.0, count=3).values().tolist() == pytest.approx([5.0, 5.1, 5.2])
    assert McConfig().paths > 0
    assert BachelierQuote(forward=1.0, strike=1.0, maturity=1.0).sigma_n == 0.0
    assert RunConfig(model=p).maturity == 1.0


# ------------------------------------------------------------------
# 2. Config loads defaults
# ------------------------------------------------------------------
def test_config_defaults():
    from normalsv.config import settings

    assert settings.QUAD_ABS_TOL == 1e-10
    assert settings.MC_REPETITIONS == 20
    assert settings.MC_PATHS * settings.MC_REPETITIONS == 200_000
    assert settings.FFT_WINDOW_TOL == 1e-7
    assert settings.SURFACE_STRIKES == 25
    assert settings.SURFACE_MATURITIES == 15
    assert settings.INTRINSIC_CLAMP == 1e-10
    assert settings.worker_count >= 1


def test_threads_env_override(monkeypatch):
    from normalsv.config import Settings

    monkeypatch.setenv("NORMALSV_THREADS", "3")
    assert Settings().worker_count == 3


# ------------------------------------------------------------------
# 3. Storage reads configs and writes CSV
# ------------------------------------------------------------------
def test_run_config_roundtrip(tmp_path):
    from normalsv.services.storage import load_run_config

    path = tmp_path / "run.json"
    path.write_text(json.dumps({
        "model": {"s0": 0.0, "a": 1e-6, "b": 1.0, "sigma": 0.3, "rho": 0.1, "v0": 0.04},
        "strikes": [0.0, 0.01],
        "fft": {"n": 1024, "alpha": 4.0},
    }))
    config = load_run_config(path)
    assert config.strikes == [0.0, 0.01]
    assert config.fft_config().grid.n == 1024


def test_render_csv_line_endings():
    from normalsv.services.storage import render_csv

    text = render_csv(["a", "b"], [[0.1, 2]])
    assert text == "a,b\n0.10000000000000001,2\n"


# ------------------------------------------------------------------
# 4. CLI parser builds
# ------------------------------------------------------------------
def test_cli_parser_builds():
    from normalsv.main import build_parser

    parser = build_parser()
    args = parser.parse_args(["price", "--config", "x.json", "--method", "mc"])
    assert args.command == "price"
    assert args.method == "mc"
    assert args.drift_sign == "plus"

    args = parser.parse_args(["--config", "x.json", "--seed", "5", "verify"])
    assert args.config == "x.json"
    assert args.seed == 5


# ------------------------------------------------------------------
# 5. Pricer registry dispatches
# ------------------------------------------------------------------
def test_pricer_registry_has_all_methods():
    from normalsv.pricers import _PRICER_REGISTRY

    assert set(_PRICER_REGISTRY) == {"fft", "quad", "mc"}
