import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbplab import core

import gen

A26 = 1j * math.sqrt(3.0) / 3.0
B26 = 0.5 - (math.sqrt(3.0) / 6.0) * 1j


def three_cycle():
    # x -> (x2, x3, x1)
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = m[1, 2] = m[2, 0] = 1.0
    return m


def test_mat_apply_identity():
    x = np.array([1.0, 2.0, 3.0], dtype=complex)
    assert np.array_equal(core.mat_apply(core.identity(3), x), x)


def test_mat_apply_order_three_pencil(order_three, e3):
    _, _, t, _ = order_three
    out = core.mat_apply(t, e3)
    assert core.max_abs(out - np.array([B26, B26, A26])) < 1e-14


def test_mat_apply_three_cycle():
    # hand-applying x -> (x2, x3, x1) to e1 puts the 1 in the last slot
    out = core.mat_apply(three_cycle(), np.array([1.0, 0.0, 0.0]))
    assert np.allclose(out, [0.0, 0.0, 1.0])


def test_mat_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        core.mat_apply(core.identity(3), np.ones(4))


def test_mat_mul_identity_and_mismatch():
    a = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    assert np.array_equal(core.mat_mul(a, core.identity(2)), a)
    with pytest.raises(ValueError):
        core.mat_mul(a, core.identity(3))


def test_mat_pow_basics():
    t = three_cycle()
    assert np.array_equal(core.mat_pow(t, 0), core.identity(3))
    assert core.max_abs(core.mat_pow(t, 3) - core.identity(3)) == 0.0
    with pytest.raises(ValueError):
        core.mat_pow(t, -1)


def test_pencil_square_action(order_three, e3):
    _, _, t, _ = order_three
    out = core.mat_apply(core.mat_pow(t, 2), e3)
    expected = np.array([np.conj(B26), np.conj(B26), np.conj(A26)])
    assert core.max_abs(out - expected) < 1e-14
    # same vector written through the pencil entries themselves
    assert abs((B26**2 + 2 * A26 * B26) - np.conj(B26)) < 1e-15
    assert abs((A26**2 + 2 * B26**2) - np.conj(A26)) < 1e-15


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10**6),
    dim=st.integers(1, 5),
    m=st.integers(0, 8),
    n=st.integers(0, 8),
)
def test_mat_pow_additivity(seed, dim, m, n):
    if m + n > 8:
        m, n = m % 3, n % 3
    g = gen.rng(seed)
    a = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    a /= max(core.max_abs(a), 1.0)
    lhs = core.mat_pow(a, m + n)
    rhs = core.mat_mul(core.mat_pow(a, m), core.mat_pow(a, n))
    assert core.max_abs(lhs - rhs) < 1e-10


def test_detect_order_identity():
    cert = core.detect_order(core.identity(4), 5)
    assert cert.order == 1 and cert.found


def test_detect_order_pencil_is_three(order_three):
    _, _, t, _ = order_three
    cert = core.detect_order(t, 6)
    assert cert.order == 3
    assert all(r > 1e-10 for r in cert.residuals[:2])


def test_detect_order_involution():
    cert = core.detect_order(np.diag([1.0, -1.0]).astype(complex), 5)
    assert cert.order == 2


def test_detect_order_not_found():
    rot = np.diag([np.exp(0.1j)])
    cert = core.detect_order(rot, 10)
    assert cert.order is None and not cert.found
    assert len(cert.residuals) == 10


def _cycle_lcm(perm):
    seen = [False] * len(perm)
    out = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out = math.lcm(out, length)
    return out


@settings(max_examples=80, deadline=None)
@given(perm=st.permutations(list(range(7))))
def test_detect_order_matches_cycle_structure(perm):
    n = len(perm)
    m = np.zeros((n, n), dtype=complex)
    m[np.arange(n), perm] = 1.0
    expected = _cycle_lcm(perm)
    cert = core.detect_order(m, expected)
    assert cert.order == expected


def test_is_idempotent_examples(order_three):
    p, _, _, _ = order_three
    assert core.is_idempotent(p)
    assert not core.is_idempotent(np.diag([1.0, 0.5]).astype(complex))


def test_is_involution_shift_reflection(shift4):
    t = shift4
    r = (-core.identity(4) + 2 * t + 2 * (t @ t)) / 3
    assert core.is_involution(r)


def test_range_and_kernel_of_averaging_projection(order_three):
    p, _, _, _ = order_three
    rb = core.range_basis(p)
    kb = core.kernel_basis(p)
    assert len(rb) == 1 and len(kb) == 2
    # range is the line through (1,1,1)
    v = rb[0]
    assert core.max_abs(v - v[0] * np.ones(3)) < 1e-12
    # (1,1,-2) lies in the kernel span
    target = np.array([1.0, 1.0, -2.0], dtype=complex)
    coeffs, residual, *_ = np.linalg.lstsq(np.column_stack(kb), target, rcond=None)
    assert core.max_abs(np.column_stack(kb) @ coeffs - target) < 1e-10


def test_range_kernel_trivial_cases():
    assert len(core.range_basis(core.identity(3))) == 3
    assert core.kernel_basis(core.identity(3)) == []
    p = np.diag([1.0, 0.0, 0.0]).astype(complex)
    rb = core.range_basis(p)
    kb = core.kernel_basis(p)
    assert len(rb) == 1 and np.allclose(rb[0], [1.0, 0.0, 0.0])
    assert len(kb) == 2


def test_range_basis_rejects_non_idempotent():
    with pytest.raises(ValueError):
        core.range_basis(np.diag([1.0, 0.5]).astype(complex))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), dim=st.integers(2, 8))
def test_range_kernel_decomposition(seed, dim):
    p = gen.random_idempotent(gen.rng(seed), dim)
    rb = core.range_basis(p)
    kb = core.kernel_basis(p)
    assert len(rb) + len(kb) == dim
    for v in rb:
        assert core.max_abs(p @ v - v) < 1e-10
    for v in kb:
        assert core.max_abs(p @ v) < 1e-10
    stacked = np.column_stack(rb + kb)
    assert np.linalg.matrix_rank(stacked, tol=1e-8) == dim


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), dim=st.integers(2, 8))
def test_reflection_of_idempotent_is_involution(seed, dim):
    p = gen.random_idempotent(gen.rng(seed), dim)
    assert core.is_involution(2 * p - core.identity(dim))
