"""Small numeric helpers shared across modules."""

from __future__ import annotations

import math

import numpy as np

# Guard against float over-count at exact multiples, e.g. 0.07 * 100 -> 7.000000000000001.
_CEIL_GUARD = 1e-12


def ceil_count(fraction: float, n: int) -> int:
    """Number of items in the top ``fraction`` of ``n``, i.e. ceil(fraction * n).

    The product is nudged down by a tiny epsilon before the ceiling so that
    fractions whose product is an exact integer are not rounded up by
    floating-point noise.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    count = math.ceil(fraction * n - _CEIL_GUARD)
    return max(0, min(n, count))


def sigmoid(x):
    """Numerically stable logistic function, elementwise."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    if out.ndim == 0:
        return float(out)
    return out
