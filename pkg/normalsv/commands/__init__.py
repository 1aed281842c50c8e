"""CLI subcommands.

Each module exposes ``register(subparsers, parent)`` to add its parser and
a ``run(args) -> int`` handler that returns the process exit code.
"""

from __future__ import annotations

import argparse
import sys

from normalsv.models.run import RunConfig
from normalsv.services.storage import load_run_config, save_text


def load_config(args: argparse.Namespace) -> RunConfig:
    """Read ``--config`` and apply the ``--seed`` override."""
    config = load_run_config(args.config)
    if args.seed is not None:
        mc = config.mc.model_copy(update={"seed": args.seed})
        config = config.model_copy(update={"mc": mc})
    return config


def emit(text: str, out: str | None) -> None:
    """Write command output to ``--out`` or stdout."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        save_text(out, text)
