import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbplab import core, norms
from gbplab.norms import (
    CERTIFIED,
    FALSIFIED,
    UNKNOWN,
    Lp,
    OrbitMax,
    SamplingBudget,
    SumRenorm,
    Sup,
    decompose_perm_diag,
    eval_norm,
    isometry_verdict,
    sample_unit_sphere,
)

import gen


def swap_matrix():
    return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def all_specs(order_three):
    _, _, t, star = order_three
    r = 2 * order_three[0] - core.identity(3)
    return [
        Lp(1.0),
        Lp(2.0),
        Lp(3.5),
        Sup(),
        star,
        SumRenorm(Sup(), r),
    ]


def test_eval_norm_values(order_three, e3):
    _, _, t, star = order_three
    assert abs(eval_norm(Sup(), t @ e3) - math.sqrt(3) / 3) < 1e-14
    assert abs(eval_norm(star, e3) - 1.0) < 1e-14
    double_sup = SumRenorm(Sup(), core.identity(3))
    x = np.array([1.0, -2.0, 0.5j])
    assert abs(eval_norm(double_sup, x) - 2 * eval_norm(Sup(), x)) < 1e-14
    assert abs(eval_norm(Lp(2), np.array([3.0, 4.0])) - 5.0) < 1e-14
    assert abs(eval_norm(Lp(1), np.array([3.0, -4.0])) - 7.0) < 1e-14


def test_eval_norm_dimension_mismatch(order_three):
    _, _, _, star = order_three
    with pytest.raises(ValueError):
        eval_norm(star, np.ones(4))


def test_lp_requires_p_at_least_one():
    with pytest.raises(ValueError):
        Lp(0.5)


def test_orbit_max_validates_order(order_three):
    _, _, t, _ = order_three
    with pytest.raises(ValueError):
        OrbitMax(Sup(), t, 2)


def test_sum_renorm_validates_involution():
    with pytest.raises(ValueError):
        SumRenorm(Sup(), np.diag([1.0, 0.5]).astype(complex))


def test_nesting_depth_capped(order_three):
    _, _, t, star = order_three
    r = np.diag([1.0, -1.0, 1.0]).astype(complex)
    with pytest.raises(ValueError):
        SumRenorm(SumRenorm(star, r), r)


def test_norm_axioms_on_samples(order_three):
    g = gen.rng(7)
    for spec in all_specs(order_three):
        for _ in range(1000):
            x = g.standard_normal(3) + 1j * g.standard_normal(3)
            y = g.standard_normal(3) + 1j * g.standard_normal(3)
            alpha = complex(g.standard_normal(), g.standard_normal())
            assert abs(eval_norm(spec, alpha * x) - abs(alpha) * eval_norm(spec, x)) < 1e-9
            assert eval_norm(spec, x + y) <= eval_norm(spec, x) + eval_norm(spec, y) + 1e-9


def test_sum_renorm_equivalence_bounds(order_three):
    p, _, _, _ = order_three
    r = 2 * p - core.identity(3)
    spec = SumRenorm(Sup(), r)
    g = gen.rng(3)
    samples = [g.standard_normal(3) + 1j * g.standard_normal(3) for _ in range(300)]
    op_estimate = max(eval_norm(Sup(), r @ x) / eval_norm(Sup(), x) for x in samples)
    for x in samples:
        base = eval_norm(Sup(), x)
        renormed = eval_norm(spec, x)
        assert base <= renormed + 1e-12
        assert renormed <= (1 + op_estimate) * base + 1e-9


def test_orbit_max_generator_invariance(order_three):
    _, _, t, star = order_three
    g = gen.rng(11)
    for _ in range(200):
        x = g.standard_normal(3) + 1j * g.standard_normal(3)
        assert abs(eval_norm(star, t @ x) - eval_norm(star, x)) < 1e-12


def test_sum_renorm_reflector_invariance(order_three):
    p, _, _, _ = order_three
    r = 2 * p - core.identity(3)
    spec = SumRenorm(Sup(), r)
    g = gen.rng(13)
    for _ in range(200):
        x = g.standard_normal(3) + 1j * g.standard_normal(3)
        assert abs(eval_norm(spec, r @ x) - eval_norm(spec, x)) < 1e-12


def test_decompose_perm_diag_cases(order_three):
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = m[1, 2] = m[2, 0] = 1.0
    pd = decompose_perm_diag(m)
    assert pd is not None and pd.perm == (1, 2, 0)
    assert np.allclose(pd.phases, 1.0)

    d = np.diag([np.exp(1j * np.pi / 4), 1.0])
    pd = decompose_perm_diag(d)
    assert pd is not None and pd.perm == (0, 1)
    assert abs(pd.phases[0] - np.exp(1j * np.pi / 4)) < 1e-14

    # the order-3 pencil has off-diagonal entries of modulus sqrt(3)/3:
    # too large to ignore, too small to be unimodular
    _, _, t, _ = order_three
    assert abs(abs(t[0, 1]) - math.sqrt(3) / 3) < 1e-14
    assert decompose_perm_diag(t) is None

    assert decompose_perm_diag(np.ones((2, 2), dtype=complex)) is None


def test_sample_unit_sphere_contract(order_three):
    _, _, _, star = order_three
    a = sample_unit_sphere(star, 3, seed=5, count=10)
    b = sample_unit_sphere(star, 3, seed=5, count=10)
    for va, vb in zip(a, b):
        assert np.array_equal(va, vb)
    for v in a:
        assert abs(eval_norm(star, v) - 1.0) <= 1e-12
    # signed basis first: +e1, -e1, +e2, ...
    sup_samples = sample_unit_sphere(Sup(), 2, seed=0, count=4)
    expected = [[1, 0], [-1, 0], [0, 1], [0, -1]]
    for v, e in zip(sup_samples, expected):
        assert np.allclose(v, e)


def test_verdict_pencil_not_sup_isometry(order_three):
    _, _, t, _ = order_three
    v = isometry_verdict(t, Sup())
    assert v.status == FALSIFIED and v.method == "perm_diag"
    # first vector in the deterministic enumeration already violates
    assert np.allclose(v.witness, [1.0, 0.0, 0.0])
    assert abs(eval_norm(Sup(), t @ v.witness) - eval_norm(Sup(), v.witness)) > 1e-10


def test_verdict_pencil_certified_under_orbit_max(order_three):
    _, _, t, star = order_three
    v = isometry_verdict(t, star)
    assert v.status == CERTIFIED and v.method == "orbit_structural"
    v2 = isometry_verdict(t @ t, star)
    assert v2.status == CERTIFIED


def test_verdict_unitary_diagonal():
    t = np.diag([1j, 1.0, -1.0])
    v = isometry_verdict(t, Lp(2))
    assert v.status == CERTIFIED and v.method == "unitary"


def test_verdict_unitary_falsified_with_witness():
    t = np.diag([2.0, 1.0]).astype(complex)
    v = isometry_verdict(t, Lp(2))
    assert v.status == FALSIFIED and v.method == "unitary"
    assert abs(eval_norm(Lp(2), t @ v.witness) - eval_norm(Lp(2), v.witness)) > 1e-10


def test_verdict_l1_cases():
    v = isometry_verdict(swap_matrix(), Lp(1))
    assert v.status == CERTIFIED and v.method == "perm_diag"
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    v2 = isometry_verdict(h, Lp(1))
    assert v2.status == FALSIFIED
    assert abs(eval_norm(Lp(1), h @ v2.witness) - eval_norm(Lp(1), v2.witness)) > 1e-10


def test_verdict_unknown_for_sum_renorm_reflector(order_three):
    # R is an isometry of its own renorm, but there is no structural
    # certificate for it, so a finite sample search must stay unknown
    p, _, _, _ = order_three
    r = 2 * p - core.identity(3)
    spec = SumRenorm(Sup(), r)
    budget = SamplingBudget(samples=300, seed=2)
    v = isometry_verdict(r, spec, budget)
    assert v.status == UNKNOWN
    assert v.samples_used == 300


def test_verdict_identity_under_sum_renorm(order_three):
    p, _, _, _ = order_three
    spec = SumRenorm(Sup(), 2 * p - core.identity(3))
    v = isometry_verdict(core.identity(3), spec)
    assert v.status == CERTIFIED and v.method == "identity"


def test_verdict_falsified_witness_is_sound(order_three):
    # any falsification must reproduce when both norms are re-evaluated
    _, _, t, star = order_three
    g = gen.rng(21)
    for _ in range(20):
        lam = np.exp(2j * np.pi * g.uniform(0.05, 0.28))
        s = order_three[0] + lam * (core.identity(3) - order_three[0])
        v = isometry_verdict(s, star, SamplingBudget(samples=500, seed=1))
        assert v.status == FALSIFIED
        assert abs(eval_norm(star, s @ v.witness) - eval_norm(star, v.witness)) > 1e-10


def test_verdict_dimension_mismatch(order_three):
    _, _, _, star = order_three
    with pytest.raises(ValueError):
        isometry_verdict(core.identity(4), star)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), dim=st.integers(1, 6))
def test_perm_diag_certified_for_sup_and_lp(seed, dim):
    m = gen.random_perm_diag(gen.rng(seed), dim)
    for spec in (Sup(), Lp(1), Lp(3.0)):
        assert isometry_verdict(m, spec).status == CERTIFIED
