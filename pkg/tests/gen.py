"""Seeded random instance generators shared across the test modules."""

from __future__ import annotations

import numpy as np

from gbplab import core
from gbplab.gbp import UnimodularScalar, pencil
from gbplab.norms import Lp, Sup
from gbplab.wco import WcoSpec


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_unitary(gen: np.random.Generator, n: int) -> np.ndarray:
    z = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_idempotent(gen: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    """Idempotent A D A^-1 with singular values of A in [0.5, 2], so the
    conjugation stays well conditioned.  Needs n >= 2 for a proper rank."""
    u = random_unitary(gen, n)
    v = random_unitary(gen, n)
    s = gen.uniform(0.5, 2.0, n)
    a = (u * s) @ v
    if rank is None:
        rank = int(gen.integers(1, n))
    d = np.zeros(n)
    d[:rank] = 1.0
    return a @ np.diag(d) @ np.linalg.inv(a)


def random_orthogonal_projection(gen: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    u = random_unitary(gen, n)
    if rank is None:
        rank = int(gen.integers(0, n + 1))
    d = np.zeros(n)
    d[:rank] = 1.0
    return (u * d) @ u.conj().T


def random_perm_diag(gen: np.random.Generator, n: int) -> np.ndarray:
    perm = gen.permutation(n)
    phases = np.exp(2j * np.pi * gen.uniform(size=n))
    m = np.zeros((n, n), dtype=complex)
    m[np.arange(n), perm] = phases
    return m


def random_perm_diag_involution(gen: np.random.Generator, n: int) -> np.ndarray:
    """Permutation-diagonal S with S^2 = I and at least one 2-cycle."""
    assert n >= 2
    order = gen.permutation(n)
    num_pairs = int(gen.integers(1, n // 2 + 1))
    s = np.zeros((n, n), dtype=complex)
    used = np.zeros(n, dtype=bool)
    for p in range(num_pairs):
        i, j = int(order[2 * p]), int(order[2 * p + 1])
        mu = np.exp(2j * np.pi * gen.uniform())
        s[i, j] = mu
        s[j, i] = 1.0 / mu
        used[i] = used[j] = True
    for i in np.flatnonzero(~used):
        s[i, i] = gen.choice([1.0, -1.0])
    return s


def random_finite_order_perm_diag(gen: np.random.Generator, k: int, n: int) -> np.ndarray:
    """Permutation-diagonal T of exact order k on dimension n >= k whose
    spectrum covers every k-th root of unity."""
    assert n >= k >= 1
    t = np.zeros((n, n), dtype=complex)
    for i in range(k):
        t[i, (i + 1) % k] = 1.0
    rho = np.exp(-2j * np.pi / k)
    for i in range(k, n):
        t[i, i] = rho ** int(gen.integers(0, k))
    # conjugating by a permutation-diagonal similarity keeps the form,
    # the spectrum, and the order while shuffling coordinates
    w = random_perm_diag(gen, n)
    return w @ t @ np.linalg.inv(w)


def random_unitary_involution(gen: np.random.Generator, n: int) -> np.ndarray:
    u = random_unitary(gen, n)
    d = gen.choice([1.0, -1.0], size=n)
    return (u * d) @ u.conj().T


def pointwise_wco(gen: np.random.Generator, uniform: bool):
    """phi = id with every weight a unitary lambda-pencil on an l2 fiber."""
    m = int(gen.integers(1, 4))
    lam = UnimodularScalar.root_of_unity(1, int(gen.integers(2, 7)))
    dim = int(gen.integers(1, 4))
    dims = [dim if uniform else int(gen.integers(1, 4)) for _ in range(m)]
    weights = []
    for d in dims:
        p = random_orthogonal_projection(gen, d)
        weights.append(pencil(p, lam) if core.is_idempotent(p) else np.eye(d, dtype=complex))
    spec = WcoSpec(tuple(dims), tuple(range(m)), tuple(weights), tuple(Lp(2) for _ in dims))
    return spec, lam


def reflection_wco(gen: np.random.Generator, uniform: bool, sup_fibers: bool):
    """Involutive phi with at least one 2-cycle, lambda = -1, and weights
    inverting each other along the cycles (involutions at fixed points)."""
    m = int(gen.integers(2, 5))
    num_pairs = int(gen.integers(1, m // 2 + 1))
    order = gen.permutation(m)
    phi = list(range(m))
    dim = int(gen.integers(1, 4))
    dims = [dim if uniform else int(gen.integers(1, 4)) for _ in range(m)]
    weights: list = [None] * m
    for p in range(num_pairs):
        i, j = int(order[2 * p]), int(order[2 * p + 1])
        phi[i], phi[j] = j, i
        dims[j] = dims[i]
        if sup_fibers:
            w = random_perm_diag(gen, dims[i])
        else:
            w = random_unitary(gen, dims[i])
        weights[i] = w
        weights[j] = np.linalg.inv(w)
    for i in range(m):
        if weights[i] is None:
            if sup_fibers:
                weights[i] = random_perm_diag_involution(gen, dims[i]) if dims[i] >= 2 else np.array(
                    [[gen.choice([1.0, -1.0])]], dtype=complex
                )
            else:
                weights[i] = random_unitary_involution(gen, dims[i])
    fiber_norm = Sup() if sup_fibers else Lp(2)
    spec = WcoSpec(tuple(dims), tuple(phi), tuple(weights), tuple(fiber_norm for _ in dims))
    return spec, UnimodularScalar.root_of_unity(1, 2)


def broken_wco(gen: np.random.Generator):
    """Specs whose assembled operator cannot satisfy the quadratic relation."""
    kind = int(gen.integers(0, 3))
    if kind == 0:
        # 2-cycle but lambda != -1
        dim = int(gen.integers(1, 4))
        w = random_unitary(gen, dim)
        spec = WcoSpec(
            (dim, dim), (1, 0), (w, np.linalg.inv(w)), (Lp(2), Lp(2))
        )
        return spec, UnimodularScalar.root_of_unity(1, 4)
    if kind == 1:
        # 3-cycle: phi is not an involution
        dim = int(gen.integers(1, 4))
        ws = tuple(random_unitary(gen, dim) for _ in range(3))
        spec = WcoSpec((dim,) * 3, (1, 2, 0), ws, (Lp(2),) * 3)
        return spec, UnimodularScalar.root_of_unity(1, 2)
    # phi = id but a weight is no lambda-pencil
    lam = UnimodularScalar.root_of_unity(1, int(gen.integers(2, 7)))
    while True:
        dim = int(gen.integers(2, 4))
        w = random_unitary(gen, dim)
        from gbplab.wco import quadratic_residual

        if quadratic_residual(w, lam) > 0.1:
            break
    spec = WcoSpec((dim,), (0,), (w,), (Lp(2),))
    return spec, lam
