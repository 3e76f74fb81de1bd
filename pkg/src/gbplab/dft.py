"""Cyclic-group Fourier machinery for projection-coefficient decisions.

Conventions are pinned because transform conventions vary: the primitive
root is rho = exp(-2*pi*i/k), the forward transform is the unnormalized
matrix W_k with (i, j) entry rho^(i*j) (0-based), and the inverse carries
the 1/k factor.  Both transforms are direct O(k^2) products; the orders
in play are tiny.

A linear combination sum(z_i T^i) of the iterates of an order-k operator
is a projection exactly when the forward transform of z lands on a 0/1
vector, i.e. z is the inverse transform of the indicator of a subset of
{0..k-1}.  The subset picks which spectral projections of T survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import core
from .core import DEFAULT_TOL


def root_of_unity(k: int) -> complex:
    """rho = exp(-2*pi*i/k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return complex(np.exp(-2j * np.pi / k))


def _phase_table(k: int, sign: float) -> np.ndarray:
    grid = np.outer(np.arange(k), np.arange(k)) % k
    return np.exp(sign * 2j * np.pi * grid / k)


def dft_matrix(k: int) -> np.ndarray:
    """W_k with (i, j) entry rho^(i*j)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _phase_table(k, -1.0)


def idft_matrix(k: int) -> np.ndarray:
    """Inverse of W_k: (i, j) entry conj(rho)^(i*j) / k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _phase_table(k, 1.0) / k


def dft(z) -> np.ndarray:
    z = core.as_vector(z)
    return dft_matrix(z.size) @ z


def idft(zhat) -> np.ndarray:
    zhat = core.as_vector(zhat)
    return idft_matrix(zhat.size) @ zhat


def indicator(subset: Iterable[int], k: int) -> np.ndarray:
    """0/1 vector delta_S for S a subset of {0..k-1}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    delta = np.zeros(k, dtype=complex)
    for i in subset:
        if not 0 <= int(i) < k:
            raise ValueError(f"subset element {i} outside 0..{k - 1}")
        delta[int(i)] = 1.0
    return delta


def decide_projection_coeffs(z, tol: float = DEFAULT_TOL) -> frozenset[int] | None:
    """Subset S with z = idft(indicator(S)), or None if z cannot make a
    projection out of any order-k operator's iterates.

    The decision is purely coefficient-level: the forward transform of z
    must land entrywise on {0, 1}.  It does not consult any particular
    operator, so for operators with degenerate spectrum a None here can
    coexist with an idempotent combination (see the module docstring).
    """
    z = core.as_vector(z)
    alpha = dft(z)
    on = np.abs(alpha - 1.0) <= tol
    off = np.abs(alpha) <= tol
    if not np.all(on | off):
        return None
    return frozenset(int(i) for i in np.flatnonzero(on))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Pairwise orthogonal idempotents Q_0..Q_{k-1} with sum(Q_j) = I and
    T = sum(rho^j Q_j); Q_j is zero when rho^j is not an eigenvalue."""

    order: int
    projections: tuple[np.ndarray, ...]

    def reconstruct(self) -> np.ndarray:
        rho = root_of_unity(self.order)
        return sum(rho**j * q for j, q in enumerate(self.projections))


def spectral_projections(t, k: int, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigenprojections of an operator with T^k = I by power averaging:
    Q_j = (1/k) sum_m conj(rho)^(j*m) T^m."""
    t = core.as_operator(t)
    if k < 1:
        raise ValueError("k must be >= 1")
    eye = core.identity(t.shape[0])
    if core.max_abs(core.mat_pow(t, k) - eye) > tol:
        raise ValueError(f"operator does not satisfy T^{k} = I within tolerance")
    powers = [eye]
    for _ in range(k - 1):
        powers.append(powers[-1] @ t)
    projections = []
    for j in range(k):
        coeffs = np.exp(2j * np.pi * ((j * np.arange(k)) % k) / k)
        projections.append(sum(c * p for c, p in zip(coeffs, powers)) / k)
    return SpectralDecomposition(k, tuple(projections))


def synthesize_projection(
    t, k: int, subset: Iterable[int], tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Projection sum of the chosen spectral parts of T, together with the
    coefficient vector z = idft(indicator(subset)) that realizes it as a
    combination sum(z_i T^i)."""
    subset = frozenset(int(i) for i in subset)
    delta = indicator(subset, k)
    decomp = spectral_projections(t, k, tol)
    p = np.zeros_like(decomp.projections[0])
    for j in subset:
        p = p + decomp.projections[j]
    return p, idft(delta)
