"""Storage service — every config read and CSV write goes through here.

Commands and scripts should use these helpers instead of raw open() /
json.load(), so that path handling and number formatting live in one place.

Usage:
    from normalsv.services.storage import load_run_config, write_surface_csv
    config = load_run_config("data/table1.json")
    write_surface_csv(surface, "output/figure1.csv")
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from normalsv.errors import ConfigError, OutputError
from normalsv.models.pricing import PricingMethod
from normalsv.models.run import RunConfig
from normalsv.models.surface import VolSurface

logger = logging.getLogger(__name__)

SURFACE_HEADER = ("strike", "maturity", "price", "implied_vol")


# ---------- Config ----------

def load_json(path: str | Path) -> dict:
    """Read a JSON document.  Raises ConfigError if missing or malformed."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc


def load_run_config(path: str | Path) -> RunConfig:
    data = load_json(path)
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    logger.debug("loaded run config from %s", path)
    return config


# ---------- CSV ----------

def format_number(value: float) -> str:
    """17 significant digits: parses back to the same double."""
    return "%.17g" % value


def render_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """CSV text with "\\n" line endings; floats at full precision."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_number(v) if isinstance(v, float) else v for v in row]
        )
    return buffer.getvalue()


def save_text(path: str | Path, text: str) -> Path:
    """Write text, creating parent directories.  Raises OutputError."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise OutputError(str(path), exc.strerror or str(exc)) from exc
    return path


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]


# ---------- Surfaces ----------

def write_surface_csv(s: VolSurface, path: str | Path) -> Path:
    """strike,maturity,price,implied_vol rows in maturity-major order."""
    path = save_text(path, render_csv(SURFACE_HEADER, s.rows()))
    logger.info("wrote %d surface rows to %s", s.prices.size, path)
    return path


def read_surface_csv(
    path: str | Path, method: PricingMethod = PricingMethod.QUAD
) -> VolSurface:
    """Inverse of ``write_surface_csv``."""
    header, rows = read_csv(path)
    if tuple(header) != SURFACE_HEADER:
        raise ValueError(f"{path}: unexpected header {header}")
    data = np.array(rows, dtype=float).reshape(-1, 4)
    strikes = np.unique(data[:, 0])
    maturities = np.unique(data[:, 1])
    shape = (maturities.size, strikes.size)
    if data.shape[0] != shape[0] * shape[1]:
        raise ValueError(f"{path}: rows do not form a full strike x maturity grid")
    return VolSurface(
        strikes=strikes,
        maturities=maturities,
        prices=data[:, 2].reshape(shape),
        implied_vols=data[:, 3].reshape(shape),
        method=method,
    )
