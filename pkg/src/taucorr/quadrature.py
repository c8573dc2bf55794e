"""Gauss-Legendre nodes and weights, self-contained.

Roots of the degree-n Legendre polynomial are found by Newton iteration
on the three-term recurrence, starting from Chebyshev-angle guesses.  An
n-point rule integrates polynomials up to degree 2n - 1 exactly on
[-1, 1].
"""

from __future__ import annotations

import numpy as np

__all__ = ["gauss_legendre"]

MAX_ORDER = 64
_NEWTON_TOL = 1e-15


def _legendre_pair(order: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P_order(x) and its derivative via the recurrence, vectorized over x."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, order):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    if order == 1:
        dp = np.ones_like(x)
    else:
        dp = order * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (ascending) and weights of the order-point rule on [-1, 1]."""
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {order}")
    k = np.arange(order, dtype=float)
    x = np.cos(np.pi * (k + 0.75) / (order + 0.5))
    for _ in range(100):
        p, dp = _legendre_pair(order, x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) <= _NEWTON_TOL:
            break
    else:
        raise RuntimeError(f"Newton iteration did not converge for order {order}")
    _, dp = _legendre_pair(order, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    ascending = np.argsort(x)
    return x[ascending], w[ascending]
