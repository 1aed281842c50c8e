"""Tests for pricers/mc.py — full-truncation Euler Monte-Carlo.

Path counts are kept small.  Most statistical assertions use a constant-variance
model (sigma ~ 0, a = b v0) where the Euler scheme is exact, so the only
error left is sampling noise; the Table 1 and step-refinement cases allow
for the discretisation bias as well.
"""

from __future__ import annotations

import logging
import math
import unittest

import numpy as np
import pytest

from normalsv.config import settings
from normalsv.models.params import ModelParams
from normalsv.models.presets import TABLE1_MC_PRICE, figure_params, table1_params
from normalsv.models.pricing import McConfig
from normalsv.models.surface import BachelierQuote
from normalsv.pricers.bachelier import bachelier_price
from normalsv.pricers.charfn import char_fn
from normalsv.pricers.mc import (
    Moments,
    _chunk_sizes,
    estimate_charfn_mc,
    price_mc,
    price_mc_strikes,
    simulate_terminal,
)
from normalsv.pricers.transform import price_quadrature


# ------------------------------------------------------------------
# Fixtures
# ------------------------------------------------------------------
def _pinned_params(**overrides) -> ModelParams:
    """Variance stays at v0: sigma negligible and a = b v0."""
    values = dict(s0=1.0, r=0.0, a=0.09, b=1.0, sigma=1e-6, rho=0.0, v0=0.09)
    values.update(overrides)
    return ModelParams(**values)


def _make_mc(**overrides) -> McConfig:
    values = dict(steps=10, paths=4000, repetitions=2, partitions=4, seed=11)
    values.update(overrides)
    return McConfig(**values)


# ==================================================================
# 1. MOMENT ACCUMULATORS
# ==================================================================
class TestMoments(unittest.TestCase):

    def test_constant_sample_has_zero_spread(self):
        m = Moments.of(np.full(1000, 0.1))
        self.assertEqual(m.mean, 0.1)
        self.assertEqual(m.m2, 0.0)
        self.assertEqual(m.std_error, 0.0)

    def test_merge_matches_whole_sample(self):
        x = np.random.default_rng(3).standard_normal(1001)
        merged = Moments.of(x[:400]).merge(Moments.of(x[400:]))
        whole = Moments.of(x)
        self.assertEqual(merged.n, whole.n)
        self.assertAlmostEqual(merged.mean, whole.mean, places=12)
        self.assertAlmostEqual(merged.m2, whole.m2, places=9)

    def test_merge_with_empty(self):
        m = Moments.of(np.array([1.0, 2.0]))
        empty = Moments.of(np.array([]))
        self.assertEqual(m.merge(empty), m)
        self.assertEqual(empty.merge(m), m)


def test_chunk_sizes():
    assert _chunk_sizes(McConfig(paths=10, partitions=3, repetitions=2)) == [4, 3, 3, 4, 3, 3]
    sizes = _chunk_sizes(McConfig(paths=10, partitions=3, repetitions=1, antithetic=True))
    assert sizes == [4, 4, 2]


# ==================================================================
# 2. EXACT CASES
# ==================================================================
class TestExactCases(unittest.TestCase):

    def test_zero_variance_is_intrinsic(self):
        p = ModelParams(s0=1.0, r=0.02, a=0.0, b=1.0, sigma=0.2, rho=0.3, v0=0.0)
        result = price_mc(p, 1.0, 0.9, _make_mc())
        self.assertEqual(result.price, math.exp(-0.02) * (p.forward(1.0) - 0.9))
        self.assertEqual(result.std_error, 0.0)
        self.assertEqual(result.paths_used, 8000)

    def test_charfn_at_zero_is_one(self):
        estimate, se = estimate_charfn_mc(figure_params(), 0.0, 1.0, _make_mc())
        self.assertEqual(estimate, 1.0 + 0.0j)
        self.assertEqual(se, 0.0)

    def test_charfn_conjugate_symmetry(self):
        p, cfg = figure_params(), _make_mc()
        plus, _ = estimate_charfn_mc(p, 3.0, 1.0, cfg)
        minus, _ = estimate_charfn_mc(p, -3.0, 1.0, cfg)
        self.assertAlmostEqual(plus.real, minus.real, places=14)
        self.assertAlmostEqual(plus.imag, -minus.imag, places=14)

    def test_rejects_non_positive_maturity(self):
        with self.assertRaises(ValueError):
            price_mc(figure_params(), 0.0, 1.0, _make_mc())


# ==================================================================
# 3. REPRODUCIBILITY
# ==================================================================
def test_same_seed_same_price():
    p = figure_params()
    first = price_mc(p, 1.0, 1.0, _make_mc())
    second = price_mc(p, 1.0, 1.0, _make_mc())
    assert first == second


def test_different_seed_different_price():
    p = figure_params()
    assert price_mc(p, 1.0, 1.0, _make_mc(seed=1)) != price_mc(p, 1.0, 1.0, _make_mc(seed=2))


def test_thread_count_does_not_change_result(monkeypatch):
    p = figure_params()
    monkeypatch.setattr(settings, "THREADS", 1)
    serial = price_mc(p, 1.0, 1.0, _make_mc())
    monkeypatch.setattr(settings, "THREADS", 4)
    threaded = price_mc(p, 1.0, 1.0, _make_mc())
    assert serial == threaded


def test_multi_strike_matches_single_strike():
    p, cfg = figure_params(), _make_mc()
    many = price_mc_strikes(p, 1.0, [0.9, 1.0, 1.1], cfg)
    assert many[1] == price_mc(p, 1.0, 1.0, cfg)
    assert many[0].price > many[1].price > many[2].price


# ==================================================================
# 4. STATISTICS
# ==================================================================
class TestStatistics(unittest.TestCase):

    def test_terminal_variance_matches_integrated_variance(self):
        p = ModelParams(s0=0.0, a=5e-7, b=1.0, sigma=1e-8, rho=0.0, v0=0.09)
        x = simulate_terminal(p, 1.0, _make_mc(steps=200, paths=40000, repetitions=2))
        expected = 5e-7 + (0.09 - 5e-7) * -math.expm1(-1.0)
        self.assertEqual(x.size, 80000)
        self.assertAlmostEqual(float(np.var(x)) / expected, 1.0, delta=0.02)

    def test_pinned_variance_matches_bachelier(self):
        p = _pinned_params()
        result = price_mc(p, 1.0, 1.05, _make_mc(paths=20000))
        ref = bachelier_price(
            BachelierQuote(forward=1.0, strike=1.05, maturity=1.0, sigma_n=0.3)
        )
        self.assertLess(abs(result.price - ref), 4.0 * result.std_error)

    def test_std_error_scales_with_paths(self):
        p = _pinned_params()
        small = price_mc(p, 1.0, 1.0, _make_mc(paths=10000))
        large = price_mc(p, 1.0, 1.0, _make_mc(paths=20000))
        self.assertAlmostEqual(small.std_error / large.std_error, math.sqrt(2.0), delta=0.2)

    def test_charfn_matches_closed_form(self):
        p = _pinned_params(s0=0.3)
        estimate, se = estimate_charfn_mc(p, 2.0, 1.0, _make_mc(paths=20000))
        analytic = complex(char_fn(p, 2.0, 1.0))
        self.assertLess(abs(estimate - analytic), 4.0 * se)

    def test_antithetic_reduces_error(self):
        p = _pinned_params()
        plain = price_mc(p, 1.0, 1.0, _make_mc(paths=10000))
        anti = price_mc(p, 1.0, 1.0, _make_mc(paths=10000, antithetic=True))
        self.assertEqual(anti.paths_used, plain.paths_used)
        self.assertLess(anti.std_error, plain.std_error)

    def test_table1_price_matches_quadrature(self):
        p = table1_params()
        result = price_mc(p, 1.0, 0.0, _make_mc(steps=100, paths=50000, repetitions=2))
        ref = price_quadrature(p, 1.0, 0.0, 5.0)
        self.assertLess(abs(result.price - ref), 4.0 * result.std_error)
        self.assertLess(abs(result.price - TABLE1_MC_PRICE), 4.0 * result.std_error)

    def test_weak_error_shrinks_with_steps(self):
        # Euler keeps E[v_k] on the linear recursion, so Var x(T) carries an
        # O(dt) bias against the exact integrated variance.
        p = ModelParams(s0=0.0, a=0.01, b=1.0, sigma=0.1, rho=0.0, v0=0.5)
        exact = 0.01 + 0.49 * -math.expm1(-1.0)
        errors = []
        for steps in (1, 2, 4, 8):
            x = simulate_terminal(p, 1.0, _make_mc(steps=steps, paths=50000, repetitions=4))
            errors.append(abs(float(np.var(x)) - exact))
        self.assertTrue(all(a > b for a, b in zip(errors, errors[1:])), errors)
        self.assertLess(errors[-1], errors[0] / 8.0)


# ==================================================================
# 5. FELLER VIOLATION
# ==================================================================
def test_feller_violation_stays_finite(caplog):
    p = figure_params()
    cfg = _make_mc(steps=50, paths=20000, repetitions=1)
    assert cfg.steps * cfg.paths >= 1_000_000
    with caplog.at_level(logging.WARNING, logger="normalsv.pricers.mc"):
        x = simulate_terminal(p, 2.0, cfg)
    assert np.all(np.isfinite(x))
    assert "Feller" in caplog.text


@pytest.mark.parametrize("strike", [0.8, 1.0, 1.2])
def test_prices_are_non_negative(strike):
    result = price_mc(figure_params(), 1.0, strike, _make_mc())
    assert result.price >= 0.0
    assert result.std_error >= 0.0


def test_drift_sign_resolved_by_simulation():
    p = _pinned_params(r=0.02)
    estimate, se = estimate_charfn_mc(p, 5.0, 1.0, _make_mc(paths=20000))
    plus = complex(char_fn(p, 5.0, 1.0, "plus"))
    minus = complex(char_fn(p, 5.0, 1.0, "minus"))
    assert abs(plus - estimate) < 4.0 * se
    assert abs(minus - estimate) > 4.0 * se
