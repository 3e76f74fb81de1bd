"""Bundled worked examples used by the repro fixtures, tests, and scripts."""

from __future__ import annotations

import numpy as np

from . import core
from .gbp import UnimodularScalar, pencil
from .norms import OrbitMax, Sup


def averaging_projection(dim: int = 3) -> np.ndarray:
    """P x = (mean(x), ..., mean(x)): rank-one averaging projection."""
    return np.full((dim, dim), 1.0 / dim, dtype=complex)


def order_three_pencil() -> tuple[np.ndarray, UnimodularScalar, np.ndarray, OrbitMax]:
    """The averaging projection on C^3 with lambda = exp(2*pi*i/3).

    Returns (P, lambda, T, star_norm) where T = P + lambda(I - P) has
    order 3 and star_norm is the orbit-max renorm of the sup norm that
    turns T into an isometry.
    """
    p = averaging_projection(3)
    lam = UnimodularScalar.root_of_unity(1, 3)
    t = pencil(p, lam)
    star = OrbitMax(Sup(), t, 3)
    return p, lam, t, star


def three_cycle_with_fixed_tail() -> np.ndarray:
    """T(x1, x2, x3, x4) = (x2, x3, x1, x4) on C^4: an order-3 sup-norm
    isometry that permutes the first three coordinates."""
    t = np.zeros((4, 4), dtype=complex)
    t[0, 1] = 1.0
    t[1, 2] = 1.0
    t[2, 0] = 1.0
    t[3, 3] = 1.0
    return t


def pair_averaging_projection() -> np.ndarray:
    """P(x1, x2, x3) = ((x1+x2)/2, (x1+x2)/2, x3) on C^3."""
    p = core.identity(3)
    p[:2, :2] = 0.5
    return p
