"""Radix-2 iterative decimation-in-time FFT.

Computes the forward transform

    w[k] = sum_j exp(-2 pi i j k / N) x[j],     k = 0 .. N-1

for power-of-two N.  Each butterfly stage is vectorised across all blocks,
so a call costs log2(N) numpy passes.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike


def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx = idx >> 1
    return rev


def dft(x: ArrayLike) -> np.ndarray:
    """Forward DFT of a power-of-two-length vector."""
    data = np.asarray(x, dtype=complex).ravel()
    n = data.size
    if n == 0 or n & (n - 1):
        raise ValueError(f"dft length must be a power of two, got {n}")

    out = data[_bit_reverse_indices(n)]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(n // size, size)
        top = blocks[:, :half].copy()
        bottom = blocks[:, half:] * twiddle
        blocks[:, :half] = top + bottom
        blocks[:, half:] = top - bottom
        size *= 2
    return out


def naive_dft(x: ArrayLike) -> np.ndarray:
    """O(N^2) reference sum; phase indices are reduced mod N before use."""
    data = np.asarray(x, dtype=complex).ravel()
    n = data.size
    j = np.arange(n)
    phase = np.outer(j, j) % n
    return np.exp(-2j * np.pi * phase / n) @ data
