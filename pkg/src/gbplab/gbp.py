"""Generalized bi-circular projection constructions and tests.

A projection P is a GBP when the pencil P + lambda(I - P) is an isometry
for some unimodular lambda != 1.  This module builds pencils, synthesizes
the reflection hiding inside a finite-order pencil, checks the pairwise
range/kernel criterion, forms n-circular averages, and estimates the
multiplicative group of admissible lambdas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import core, norms
from .core import DEFAULT_TOL
from .norms import (
    CERTIFIED,
    FALSIFIED,
    UNKNOWN,
    IsometryVerdict,
    NormSpec,
    SamplingBudget,
)

FINITE_CYCLIC = "finite_cyclic"
LIKELY_FULL_CIRCLE = "likely_full_circle"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class UnimodularScalar:
    """A modulus-one complex number, optionally with an exact rational angle.

    When ``angle`` (reduced p/q, taken mod 1) is present the value equals
    exp(2*pi*i*p/q) and the scalar has exact multiplicative order q.
    """

    value: complex
    angle: Fraction | None = None

    def __post_init__(self):
        if abs(abs(self.value) - 1.0) > 1e-9:
            raise ValueError(f"not unimodular: |{self.value}| = {abs(self.value)}")
        if self.angle is not None:
            expected = np.exp(2j * np.pi * float(self.angle))
            if abs(self.value - expected) > 1e-9:
                raise ValueError("value does not match the stated rational angle")

    @classmethod
    def root_of_unity(cls, p: int, q: int) -> "UnimodularScalar":
        """exp(2*pi*i*p/q) with the angle stored exactly."""
        if q < 1:
            raise ValueError("denominator must be >= 1")
        angle = Fraction(p, q) % 1
        return cls(complex(np.exp(2j * np.pi * float(angle))), angle)

    @classmethod
    def from_complex(cls, z: complex) -> "UnimodularScalar":
        """Wrap a unimodular value with no rationality information."""
        return cls(complex(z), None)

    @property
    def order(self) -> int | None:
        """Multiplicative order, when the angle is rational."""
        return None if self.angle is None else self.angle.denominator


def _lambda_value(lam) -> complex:
    return complex(lam.value) if isinstance(lam, UnimodularScalar) else complex(lam)


def pencil(p, lam, tol: float = DEFAULT_TOL) -> np.ndarray:
    """P + lambda(I - P): fixes range(P) and scales ker(P) by lambda."""
    p = core.as_operator(p)
    if not core.is_idempotent(p, tol):
        raise ValueError("pencil requires an idempotent P")
    lam = _lambda_value(lam)
    return p + lam * (core.identity(p.shape[0]) - p)


def build_reflection(t, lam: UnimodularScalar, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Reflection in the algebra generated by a finite-order operator.

    For lambda = exp(2*pi*i*p/q) in lowest terms with q >= 2, and T with
    T^q = I:

    * q = 2k: R = T^k (lambda^k = -1, so T^k is the reflection directly);
    * q = 2k+1: R = ((1-2k) I + 2T + ... + 2 T^{2k}) / (2k+1).

    Either way R^2 = I and (I + R)/2 is idempotent.  Irrational (or
    missing) angles admit no finite-order construction and are rejected.
    """
    t = core.as_operator(t)
    if not isinstance(lam, UnimodularScalar) or lam.angle is None:
        raise ValueError("build_reflection requires a lambda with a rational angle")
    q = lam.angle.denominator
    if q < 2:
        raise ValueError("lambda must differ from 1")
    if core.max_abs(core.mat_pow(t, q) - core.identity(t.shape[0])) > tol:
        raise ValueError(f"operator does not satisfy T^{q} = I within tolerance")
    if q % 2 == 0:
        return core.mat_pow(t, q // 2)
    k = (q - 1) // 2
    acc = float(1 - 2 * k) * core.identity(t.shape[0])
    power = core.identity(t.shape[0])
    for _ in range(2 * k):
        power = power @ t
        acc = acc + 2.0 * power
    return acc / (2 * k + 1)


@dataclass(frozen=True, eq=False)
class PairwiseVerdict:
    """Outcome of the range/kernel pairwise norm test.

    Falsified carries a pair (x, y) with x in range(P), y in ker(P) and
    |norm(x - y) - norm(x - lambda y)| > tol; unknown means the sampling
    budget ran out without a violation.
    """

    status: str
    pair: tuple[np.ndarray, np.ndarray] | None = None
    samples_used: int = 0

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFIED


def pairwise_condition(
    p,
    lam,
    spec: NormSpec,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> PairwiseVerdict:
    """Search for x in range(P), y in ker(P) with norm(x-y) != norm(x-lambda y).

    The pencil P + lambda(I-P) is an isometry exactly when no such pair
    exists, so a violation here falsifies the pencil.  Basis pairs are
    tried first, then random combinations with random relative scales.
    """
    p = core.as_operator(p)
    lam = _lambda_value(lam)
    if budget is None:
        budget = SamplingBudget()
    rb = core.range_basis(p, tol)
    kb = core.kernel_basis(p, tol)
    used = 0
    if not rb or not kb:
        return PairwiseVerdict(UNKNOWN, samples_used=0)

    def violated(x: np.ndarray, y: np.ndarray) -> bool:
        return abs(norms.eval_norm(spec, x - y) - norms.eval_norm(spec, x - lam * y)) > tol

    for x, y in itertools.product(rb, kb):
        if used >= budget.samples:
            return PairwiseVerdict(UNKNOWN, samples_used=used)
        used += 1
        if violated(x, y):
            return PairwiseVerdict(FALSIFIED, pair=(x, y), samples_used=used)
    rng = np.random.default_rng(budget.seed)
    rmat = np.column_stack(rb)
    kmat = np.column_stack(kb)
    while used < budget.samples:
        used += 1
        cx = rng.standard_normal(len(rb)) + 1j * rng.standard_normal(len(rb))
        cy = rng.standard_normal(len(kb)) + 1j * rng.standard_normal(len(kb))
        x = rmat @ cx
        y = kmat @ cy
        if violated(x, y):
            return PairwiseVerdict(FALSIFIED, pair=(x, y), samples_used=used)
    return PairwiseVerdict(UNKNOWN, samples_used=used)


def n_circular(t, n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The averaging projection (I + T + ... + T^{n-1}) / n for T^n = I."""
    t = core.as_operator(t)
    if n < 1:
        raise ValueError("n must be >= 1")
    eye = core.identity(t.shape[0])
    if core.max_abs(core.mat_pow(t, n) - eye) > tol:
        raise ValueError(f"operator does not satisfy T^{n} = I within tolerance")
    acc = eye.copy()
    power = eye
    for _ in range(n - 1):
        power = power @ t
        acc = acc + power
    return acc / n


@dataclass(frozen=True, eq=False)
class LambdaGroupReport:
    """Estimate of the group of unimodular lambdas whose pencil is an isometry.

    ``members`` lists certified candidates (all roots of unity up to the
    searched order, sorted by angle).  Classification is deliberately
    hedged: sampling can falsify but never certify density in the circle.
    """

    members: tuple[UnimodularScalar, ...]
    classification: str
    order: int | None
    candidate_policy: str
    candidates_tested: int
    candidate_unknown: int
    random_certified: int
    random_falsified: int
    random_unknown: int

    @property
    def member_angles(self) -> frozenset:
        return frozenset(m.angle for m in self.members)


def _closure_violation(member_angles: set[Fraction], max_order: int) -> str | None:
    for a in member_angles:
        if (1 - a) % 1 not in member_angles:
            return f"conjugate of angle {a} missing"
    for a, b in itertools.product(member_angles, repeat=2):
        s = (a + b) % 1
        if s.denominator <= max_order and s not in member_angles:
            return f"product of angles {a} and {b} missing"
    return None


def lambda_group(
    p,
    spec: NormSpec,
    max_order: int = 24,
    random_samples: int = 1000,
    seed: int = 0,
    verdict_budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> LambdaGroupReport:
    """Test every primitive root of unity of order <= max_order plus seeded
    random unimodular values against the pencil of P.

    All random values certified -> likely the whole circle (the Hilbert-like
    structural case); all random values falsified with the certified
    candidates forming exactly the d-th roots of unity -> finite cyclic of
    order d; anything else -> inconclusive.
    """
    p = core.as_operator(p)
    if not core.is_idempotent(p, tol):
        raise ValueError("lambda_group requires an idempotent P")
    if verdict_budget is None:
        verdict_budget = SamplingBudget(samples=1000, seed=seed)

    members: list[UnimodularScalar] = []
    candidates_tested = 0
    candidate_unknown = 0
    for q in range(1, max_order + 1):
        for num in range(q):
            if gcd(num, q) != 1 and not (num == 0 and q == 1):
                continue
            lam = UnimodularScalar.root_of_unity(num, q)
            candidates_tested += 1
            verdict = norms.isometry_verdict(pencil(p, lam, tol), spec, verdict_budget, tol)
            if verdict.certified:
                members.append(lam)
            elif verdict.status == UNKNOWN:
                candidate_unknown += 1

    rng = np.random.default_rng(seed)
    random_certified = random_falsified = random_unknown = 0
    for _ in range(random_samples):
        lam = UnimodularScalar.from_complex(np.exp(2j * np.pi * rng.uniform()))
        verdict = norms.isometry_verdict(pencil(p, lam, tol), spec, verdict_budget, tol)
        if verdict.certified:
            random_certified += 1
        elif verdict.falsified:
            random_falsified += 1
        else:
            random_unknown += 1

    members.sort(key=lambda m: m.angle)
    angles = {m.angle for m in members}
    if Fraction(0) not in angles:
        raise RuntimeError("inconsistent verdicts: lambda = 1 was not certified")
    violation = _closure_violation(angles, max_order)
    if violation is not None:
        raise RuntimeError(f"member set is not closed as a group: {violation}")

    order: int | None = None
    if random_samples > 0 and random_certified == random_samples:
        classification = LIKELY_FULL_CIRCLE
    else:
        d = len(angles)
        is_cyclic = angles == {Fraction(j, d) % 1 for j in range(d)}
        if (
            random_samples > 0
            and random_falsified == random_samples
            and candidate_unknown == 0
            and is_cyclic
        ):
            classification = FINITE_CYCLIC
            order = d
        else:
            classification = INCONCLUSIVE

    policy = (
        f"primitive roots of unity of order <= {max_order}; "
        f"{random_samples} random unimodular samples (seed={seed})"
    )
    return LambdaGroupReport(
        members=tuple(members),
        classification=classification,
        order=order,
        candidate_policy=policy,
        candidates_tested=candidates_tested,
        candidate_unknown=candidate_unknown,
        random_certified=random_certified,
        random_falsified=random_falsified,
        random_unknown=random_unknown,
    )


def even_order_reflection_check(
    report: LambdaGroupReport,
    p,
    spec: NormSpec,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> bool:
    """When the lambda group has even order (or is the whole circle, which
    always contains -1), check that P averages the identity with a certified
    isometric reflection: -1 must be a member and the pencil at -1 must be a
    certified isometric involution."""
    if report.classification == FINITE_CYCLIC:
        if report.order is None or report.order % 2 != 0:
            raise ValueError("reflection check requires an even-order group")
    elif report.classification != LIKELY_FULL_CIRCLE:
        raise ValueError("reflection check requires a finite even-order or full-circle report")
    if Fraction(1, 2) not in {m.angle for m in report.members}:
        return False
    r = pencil(p, UnimodularScalar.root_of_unity(1, 2), tol)
    verdict = norms.isometry_verdict(r, spec, budget, tol)
    return verdict.certified and core.is_involution(r, tol)


@dataclass(frozen=True, eq=False)
class GbpReport:
    """Everything this library can say about one (P, lambda, norm) triple."""

    lam: UnimodularScalar
    verdict: IsometryVerdict
    pairwise_verdict: PairwiseVerdict
    reflection: np.ndarray | None
    reflection_isometric: IsometryVerdict | None


def analyze_gbp(
    p,
    lam: UnimodularScalar,
    spec: NormSpec,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> GbpReport:
    """Assemble the pencil verdict, the pairwise test, and (for rational
    angles) the synthesized reflection with its own isometry verdict."""
    p = core.as_operator(p)
    t = pencil(p, lam, tol)
    verdict = norms.isometry_verdict(t, spec, budget, tol)
    pairwise = pairwise_condition(p, lam, spec, budget, tol)
    reflection = None
    reflection_isometric = None
    if lam.angle is not None and lam.angle.denominator >= 2:
        reflection = build_reflection(t, lam, tol)
        reflection_isometric = norms.isometry_verdict(reflection, spec, budget, tol)
    return GbpReport(
        lam=lam,
        verdict=verdict,
        pairwise_verdict=pairwise,
        reflection=reflection,
        reflection_isometric=reflection_isometric,
    )
