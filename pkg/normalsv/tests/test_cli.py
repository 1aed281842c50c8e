"""Integration tests — drive ``normalsv.main.main`` end to end.

Configs are written to a temp directory; output goes through --out so the
CSV text can be read back exactly.
"""

from __future__ import annotations

import json
import shutil
import tempfile
import unittest
from pathlib import Path

import pytest

from normalsv.main import main
from normalsv.models.presets import TABLE2_PAIRS, table1_params
from normalsv.models.pricing import DriftSign
from normalsv.models.run import RunConfig
from normalsv.nodes.run_checks import check_charfn, check_deterministic_limit, check_implied_vol
from normalsv.pricers.transform import price_quadrature

TABLE1_MODEL = {"s0": -0.001, "r": 0.0, "a": 5e-7, "b": 1.0,
                "sigma": 0.25, "rho": -0.09, "v0": 0.09}
FIGURE_MODEL = {"s0": 1.0, "r": 0.0, "a": 5e-7, "b": 1.0,
                "sigma": 0.25, "rho": -0.9, "v0": 0.09}
DATA_DIR = Path(__file__).resolve().parents[2] / "data"


# ------------------------------------------------------------------
# Fixtures
# ------------------------------------------------------------------
def _make_config(**sections) -> dict:
    config = {
        "model": dict(TABLE1_MODEL),
        "maturity": 1.0,
        "strikes": [-0.0005, 0.0, 0.0005],
        "fft": {"eta": 0.25, "n": 4096, "alpha": 5.0},
        "mc": {"steps": 20, "paths": 2000, "repetitions": 1, "partitions": 2, "seed": 7},
        "verify": {"mc_steps": 10, "mc_paths": 2000, "mc_repetitions": 1,
                   "roundtrip_quotes": 20},
    }
    config.update(sections)
    return config


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def write_config(self, config: dict, name: str = "run.json") -> str:
        path = self.tmp / name
        path.write_text(json.dumps(config))
        return str(path)

    def run_cli(self, *argv: str) -> tuple[int, str]:
        out = self.tmp / "out.csv"
        if out.exists():
            out.unlink()
        code = main([*argv, "--out", str(out)])
        return code, out.read_text() if out.exists() else ""


# ==================================================================
# 1. PRICE
# ==================================================================
class TestPriceCommand(CliTestCase):

    def test_fft_price_matches_quadrature(self):
        code, text = self.run_cli("price", "--config", self.write_config(_make_config()),
                                  "--strike", "0")
        self.assertEqual(code, 0)
        lines = text.splitlines()
        self.assertEqual(lines[0], "strike,price")
        strike, price = lines[1].split(",")
        self.assertEqual(strike, "0")
        self.assertAlmostEqual(float(price), price_quadrature(table1_params(), 1.0, 0.0, 5.0),
                               delta=1e-6)

    def test_default_strikes_from_config(self):
        code, text = self.run_cli("price", "--method", "quad",
                                  "--config", self.write_config(_make_config()))
        self.assertEqual(code, 0)
        rows = [line.split(",") for line in text.splitlines()[1:]]
        self.assertEqual(len(rows), 3)
        prices = [float(r[1]) for r in rows]
        self.assertGreater(prices[0], prices[1])
        self.assertGreater(prices[1], prices[2])

    def test_mc_adds_std_error_column(self):
        code, text = self.run_cli("price", "--method", "mc",
                                  "--config", self.write_config(_make_config()))
        self.assertEqual(code, 0)
        lines = text.splitlines()
        self.assertEqual(lines[0], "strike,price,std_error")
        self.assertTrue(all(float(line.split(",")[2]) > 0 for line in lines[1:]))

    def test_seed_override_is_deterministic(self):
        path = self.write_config(_make_config())
        _, first = self.run_cli("--seed", "3", "price", "--method", "mc", "--config", path)
        _, second = self.run_cli("price", "--method", "mc", "--config", path, "--seed", "3")
        _, other = self.run_cli("price", "--method", "mc", "--config", path, "--seed", "4")
        self.assertEqual(first, second)
        self.assertNotEqual(first, other)

    def test_strike_off_grid_is_numerical_error(self):
        config = _make_config(fft={"eta": 0.25, "n": 64, "alpha": 5.0, "k0": 0.0})
        code, _ = self.run_cli("price", "--config", self.write_config(config),
                               "--strike", "100")
        self.assertEqual(code, 3)

    def test_in_the_money_strike_below_window_is_numerical_error(self):
        code, text = self.run_cli("price", "--config", str(DATA_DIR / "table1.json"),
                                  "--strike", "-1")
        self.assertEqual(code, 3)
        self.assertEqual(text, "")


# ==================================================================
# 2. CONFIG AND OUTPUT ERRORS
# ==================================================================
class TestErrors(CliTestCase):

    def test_missing_config_flag(self):
        self.assertEqual(main(["price"]), 2)

    def test_missing_config_file(self):
        self.assertEqual(main(["price", "--config", str(self.tmp / "absent.json")]), 2)

    def test_zero_sigma_is_config_error(self):
        config = _make_config()
        config["model"]["sigma"] = 0.0
        self.assertEqual(main(["price", "--config", self.write_config(config)]), 2)

    def test_unknown_key_is_config_error(self):
        config = _make_config(extra=True)
        self.assertEqual(main(["price", "--config", self.write_config(config)]), 2)

    def test_malformed_json_is_config_error(self):
        path = self.tmp / "bad.json"
        path.write_text("{not json")
        self.assertEqual(main(["price", "--config", str(path)]), 2)

    def test_bad_method_is_usage_error(self):
        path = self.write_config(_make_config())
        self.assertEqual(main(["price", "--config", path, "--method", "pde"]), 2)

    def test_unwritable_out_is_output_error(self):
        blocker = self.tmp / "blocker"
        blocker.write_text("x")
        code = main(["price", "--config", self.write_config(_make_config()),
                     "--out", str(blocker / "prices.csv")])
        self.assertEqual(code, 3)

    def test_damping_beyond_bound_is_numerical_error(self):
        config = _make_config(fft={"eta": 0.25, "n": 4096, "alpha": 40.0})
        self.assertEqual(main(["price", "--config", self.write_config(config)]), 3)


# ==================================================================
# 3. SURFACE AND BENCH
# ==================================================================
class TestSurfaceAndBench(CliTestCase):

    def test_surface_csv(self):
        config = _make_config(
            model=dict(FIGURE_MODEL),
            fft={"eta": 0.25, "n": 4096, "alpha": 1.5},
            surface={"strikes": [0.9, 1.0, 1.1], "maturities": [0.5, 1.0], "method": "quad"},
        )
        code, text = self.run_cli("surface", "--config", self.write_config(config))
        self.assertEqual(code, 0)
        lines = text.splitlines()
        self.assertEqual(lines[0], "strike,maturity,price,implied_vol")
        self.assertEqual(len(lines), 7)
        self.assertTrue(all(float(line.split(",")[3]) > 0 for line in lines[1:]))

    def test_surface_cell_failure_exits_3(self):
        config = _make_config(
            model=dict(FIGURE_MODEL),
            fft={"eta": 0.25, "n": 64, "alpha": 1.5, "k0": 1.0},
            surface={"strikes": [50.0], "maturities": [1.0], "method": "fft"},
        )
        code, _ = self.run_cli("surface", "--config", self.write_config(config))
        self.assertEqual(code, 3)

    def test_bench_without_pairs_prints_header_only(self):
        config = _make_config(bench={"pairs": []})
        code, text = self.run_cli("bench", "--config", self.write_config(config))
        self.assertEqual(code, 0)
        self.assertEqual(text, "method,n_or_ts,strikes,seconds\n")

    def test_bench_rows_and_flag(self):
        config = _make_config(bench={"pairs": [[1024, 5]], "n_strikes": 4})
        code, text = self.run_cli("bench", "--config", self.write_config(config))
        self.assertEqual(code, 0)
        lines = text.splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[1].split(",")[:3], ["fft", "1024", "4"])
        self.assertEqual(lines[2].split(",")[:3], ["mc", "5", "4"])
        self.assertIn(lines[3], ("fft_faster=true", "fft_faster=false"))

    def test_table2_first_pair_fft_is_faster(self):
        config = json.loads((DATA_DIR / "table2.json").read_text())
        config["bench"]["pairs"] = [list(TABLE2_PAIRS[0])]
        config["mc"]["paths"] = 2000
        code, text = self.run_cli("bench", "--config", self.write_config(config))
        self.assertEqual(code, 0)
        lines = text.splitlines()
        self.assertEqual(lines[1].split(",")[:3], ["fft", "2048", "20"])
        self.assertEqual(lines[-1], "fft_faster=true")


# ==================================================================
# 4. VERIFY
# ==================================================================
class TestVerify(CliTestCase):

    def test_minus_drift_fails_charfn_checks(self):
        config = _make_config()
        config["model"]["r"] = 0.02
        path = self.write_config(config)
        code, text = self.run_cli("verify", "--config", path, "--drift-sign", "minus")
        self.assertEqual(code, 1)
        rows = {line.split(",")[0]: line.split(",")[1] for line in text.splitlines()[1:]}
        self.assertEqual(rows["charfn_ode_residual"], "fail")
        self.assertEqual(rows["charfn_normalization"], "pass")

    def test_table1_config_passes_every_check(self):
        code, text = self.run_cli("verify", "--config", str(DATA_DIR / "table1.json"))
        self.assertEqual(code, 0)
        rows = {line.split(",")[0]: line.split(",")[1] for line in text.splitlines()[1:]}
        self.assertIn("charfn_vs_mc_u=5", rows)
        self.assertEqual(set(rows.values()), {"pass"})

    def test_table1_config_minus_drift_fails_mc_comparison(self):
        code, text = self.run_cli("verify", "--config", str(DATA_DIR / "table1.json"),
                                  "--drift-sign", "minus")
        self.assertEqual(code, 1)
        rows = {line.split(",")[0]: line.split(",")[1] for line in text.splitlines()[1:]}
        self.assertEqual(rows["charfn_vs_mc_u=5"], "fail")
        self.assertEqual(rows["fft_vs_quad"], "pass")


def test_charfn_checks_pass_with_plus_drift():
    results = check_charfn(table1_params(r=0.02), DriftSign.PLUS)
    assert [r.passed for r in results] == [True] * 4


def test_deterministic_limit_checks_pass():
    config = RunConfig.model_validate(_make_config())
    results = check_deterministic_limit(config, DriftSign.PLUS)
    assert all(r.passed for r in results), [r.to_row() for r in results]


def test_implied_vol_checks_pass():
    config = RunConfig.model_validate(_make_config())
    assert all(r.passed for r in check_implied_vol(config))


def test_stdout_when_no_out(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(_make_config()))
    assert main(["price", "--config", str(path), "--strike", "0"]) == 0
    captured = capsys.readouterr().out
    assert captured.startswith("strike,price\n0,")
    assert captured.endswith("\n")


@pytest.mark.parametrize("seed", ["-1", "18446744073709551616", "abc"])
def test_seed_must_be_u64(tmp_path, seed):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(_make_config()))
    assert main(["price", "--config", str(path), "--seed", seed]) == 2
