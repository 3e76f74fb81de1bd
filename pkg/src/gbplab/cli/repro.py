"""Reproduction fixtures for the bundled worked examples.

Each fixture runs a pipeline on one of the built-in examples and compares
every produced value against its closed-form expectation (sqrt(3)/3,
sqrt(7)/3, 4/3, ...) evaluated in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import core, examples, norms
from ..gbp import UnimodularScalar, build_reflection, lambda_group, n_circular, pencil
from ..norms import FALSIFIED, SamplingBudget, Sup, eval_norm

DEFAULT_REPRO_TOL = 1e-12

FIXTURE_IDS = ("2.2", "2.6", "3.1.1", "3.1.2")

DESCRIPTIONS = {
    "2.2": "order-3 coordinate shift on C^4: reflection is not an isometry, "
    "no unimodular lambda != 1 makes the averaging pencil a sup-norm isometry",
    "2.6": "averaging projection on C^3 with the orbit-max renorm: a GBP whose "
    "reflection is not an isometry",
    "3.1.1": "pair-averaging projection on C^3 under the sup norm: lambda group {1, -1}",
    "3.1.2": "averaging projection on C^3 under the orbit-max renorm: lambda group "
    "= cube roots of unity",
}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: str
    actual: str


def _scalar(name: str, actual: float, expected: float, tol: float) -> Check:
    return Check(name, abs(actual - expected) <= tol, repr(expected), repr(actual))


def _vector(name: str, actual, expected, tol: float) -> Check:
    actual = np.asarray(actual, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    ok = actual.shape == expected.shape and core.max_abs(actual - expected) <= tol
    fmt = lambda v: "(" + ", ".join(f"{z.real:.12g}{z.imag:+.12g}j" for z in v) + ")"
    return Check(name, ok, fmt(expected), fmt(actual))


def _flag(name: str, ok: bool, actual: str = "") -> Check:
    return Check(name, ok, "true", actual or str(ok).lower())


def _count(name: str, actual: int, expected: int) -> Check:
    return Check(name, actual == expected, str(expected), str(actual))


def _run_2_6(tol: float) -> list[Check]:
    p, lam, t, star = examples.order_three_pencil()
    e3 = np.array([0.0, 0.0, 1.0], dtype=complex)
    a = 1j * math.sqrt(3.0) / 3.0
    b = 0.5 - (math.sqrt(3.0) / 6.0) * 1j
    checks = [
        _vector("pencil_on_e3", t @ e3, [b, b, a], tol),
        _scalar("sup_norm_of_pencil_on_e3", eval_norm(Sup(), t @ e3), math.sqrt(3.0) / 3.0, tol),
        _vector("pencil_squared_on_e3", t @ (t @ e3), [b.conjugate(), b.conjugate(), a.conjugate()], tol),
    ]
    r = build_reflection(t, lam, tol=1e-10)
    checks.append(_vector("reflection_on_e3", r @ e3, [2 / 3, 2 / 3, -1 / 3], tol))
    checks.append(_scalar("star_norm_of_reflection_on_e3", eval_norm(star, r @ e3), math.sqrt(7.0) / 3.0, tol))
    checks.append(_scalar("star_norm_of_e3", eval_norm(star, e3), 1.0, tol))
    x = np.array([1.0, 1.0, 1.0], dtype=complex)
    y = np.array([1.0, 1.0, -2.0], dtype=complex)
    checks.append(_scalar("star_norm_of_x_plus_y", eval_norm(star, x + y), math.sqrt(7.0), tol))
    checks.append(_scalar("star_norm_of_x_minus_y", eval_norm(star, x - y), 3.0, tol))
    return checks


def _run_2_2(tol: float) -> list[Check]:
    t = examples.three_cycle_with_fixed_tail()
    p = n_circular(t, 3)
    r = build_reflection(t, UnimodularScalar.root_of_unity(1, 3), tol=1e-10)
    v = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex)
    checks = [_vector("reflection_on_0110", r @ v, [4 / 3, 1 / 3, 1 / 3, 0.0], tol)]

    e1 = np.zeros(4, dtype=complex)
    e1[0] = 1.0
    n_lambdas = 64
    falsified = 0
    witness_is_e1 = True
    worst_action_dev = 0.0
    for j in range(n_lambdas):
        lamv = complex(np.exp(2j * np.pi * (j + 0.5) / n_lambdas))
        s = pencil(p, lamv)
        verdict = norms.isometry_verdict(s, Sup(), SamplingBudget(samples=2000, seed=0))
        if verdict.status == FALSIFIED:
            falsified += 1
            if verdict.witness is None or core.max_abs(verdict.witness - e1) > tol:
                witness_is_e1 = False
        expected_action = np.array(
            [1 / 3 + 2 * lamv / 3, 1 / 3 - lamv / 3, 1 / 3 - lamv / 3, 0.0], dtype=complex
        )
        worst_action_dev = max(worst_action_dev, core.max_abs(s @ e1 - expected_action))
    checks.append(_count("pencil_falsified_count", falsified, n_lambdas))
    checks.append(_flag("witness_is_e1_for_every_lambda", witness_is_e1))
    checks.append(
        Check(
            "pencil_action_on_e1_matches_closed_form",
            worst_action_dev <= tol,
            f"max deviation <= {tol}",
            f"max deviation = {worst_action_dev:.3e}",
        )
    )
    return checks


def _lambda_group_checks(
    p, spec, expected_angles: set, expected_order: int, random_samples: int
) -> list[Check]:
    report = lambda_group(p, spec, max_order=24, random_samples=random_samples, seed=0)
    from fractions import Fraction

    angles = {m.angle for m in report.members}
    return [
        Check("classification", report.classification == "finite_cyclic", "finite_cyclic", report.classification),
        _count("group_order", report.order or 0, expected_order),
        _flag(
            "members",
            angles == {Fraction(a, b) for a, b in expected_angles},
            "{" + ", ".join(str(m.angle) for m in report.members) + "}",
        ),
        _count("random_lambdas_falsified", report.random_falsified, random_samples),
    ]


def _run_3_1_1(tol: float) -> list[Check]:
    p = examples.pair_averaging_projection()
    return _lambda_group_checks(p, Sup(), {(0, 1), (1, 2)}, 2, 1000)


def _run_3_1_2(tol: float) -> list[Check]:
    p, _, _, star = examples.order_three_pencil()
    return _lambda_group_checks(p, star, {(0, 1), (1, 3), (2, 3)}, 3, 1000)


_RUNNERS = {"2.2": _run_2_2, "2.6": _run_2_6, "3.1.1": _run_3_1_1, "3.1.2": _run_3_1_2}


def run_repro(fixture_id: str, tol: float = DEFAULT_REPRO_TOL) -> list[Check]:
    """Run one fixture and return its comparison table."""
    if fixture_id not in _RUNNERS:
        raise ValueError(f"unknown fixture id {fixture_id!r}; choose from {FIXTURE_IDS}")
    return _RUNNERS[fixture_id](tol)
