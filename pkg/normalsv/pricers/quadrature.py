"""Adaptive Simpson quadrature, refined level by level.

All intervals still above tolerance at a given depth are bisected together,
so the integrand is called with whole arrays instead of one point at a
time.  An interval [l, r] is accepted when

    |S(l, m) + S(m, r) - S(l, r)| <= 15 * tol * (r - l) / (b - a)

and contributes the Richardson-corrected value.  Accepted pieces are
summed with ``math.fsum`` so the result does not depend on refinement order.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np

from normalsv.errors import QuadratureError

logger = logging.getLogger(__name__)

VectorFn = Callable[[np.ndarray], np.ndarray]


def adaptive_simpson(
    f: VectorFn,
    a: float,
    b: float,
    abs_tol: float,
    max_evals: int,
    initial_panels: int = 64,
    max_depth: int = 60,
) -> tuple[float, int]:
    """Integrate ``f`` over [a, b]; return (value, function evaluations)."""
    if not b > a:
        raise ValueError("need b > a")

    edges = np.linspace(a, b, initial_panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    f_edges = np.asarray(f(edges), dtype=float)
    f_mids = np.asarray(f(mids), dtype=float)
    evals = edges.size + mids.size

    left, mid, right = edges[:-1], mids, edges[1:]
    fl, fm, fr = f_edges[:-1], f_mids, f_edges[1:]
    whole = (right - left) / 6.0 * (fl + 4.0 * fm + fr)
    tol = abs_tol * (right - left) / (b - a)

    accepted: list[float] = []
    depth = 0
    while left.size:
        if evals + 2 * left.size > max_evals or depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson did not converge within {max_evals} "
                f"evaluations ({left.size} intervals open at depth {depth})"
            )
        lm = 0.5 * (left + mid)
        rm = 0.5 * (mid + right)
        flm = np.asarray(f(lm), dtype=float)
        frm = np.asarray(f(rm), dtype=float)
        evals += 2 * left.size

        s_left = (mid - left) / 6.0 * (fl + 4.0 * flm + fm)
        s_right = (right - mid) / 6.0 * (fm + 4.0 * frm + fr)
        err = s_left + s_right - whole
        done = np.abs(err) <= 15.0 * tol
        if not np.all(np.isfinite(err)):
            raise QuadratureError("integrand returned non-finite values")

        accepted.extend((s_left + s_right + err / 15.0)[done].tolist())

        keep = ~done
        left, mid, right = (
            np.concatenate([left[keep], mid[keep]]),
            np.concatenate([lm[keep], rm[keep]]),
            np.concatenate([mid[keep], right[keep]]),
        )
        fl, fm, fr = (
            np.concatenate([fl[keep], fm[keep]]),
            np.concatenate([flm[keep], frm[keep]]),
            np.concatenate([fm[keep], fr[keep]]),
        )
        whole = np.concatenate([s_left[keep], s_right[keep]])
        tol = np.concatenate([tol[keep], tol[keep]]) / 2.0
        depth += 1

    logger.debug("adaptive Simpson: %d evaluations, depth %d", evals, depth)
    return math.fsum(accepted), evals
