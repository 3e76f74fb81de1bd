"""Weighted composition operators on a finite discrete base space.

A weighted composition operator acts on tuples f = (f(0), ..., f(m-1))
of fiber vectors by (Tf)(w) = u_w(f(phi(w))) for a permutation phi and
per-point weight operators u_w.  The ambient norm is the max over points
of the fiber norms, the finite model of a sup-norm function space.

``classify`` decides, for a given unimodular lambda != 1, which side of
the GBP dichotomy the operator realizes:

* ``reflection_average``: phi is a nontrivial involution, lambda = -1,
  and the weights invert each other along the 2-cycles (squaring to the
  identity at fixed points), so P = (I + T)/2 with T an isometric
  reflection;
* ``pointwise_gbp``: phi is the identity and every weight is the
  lambda-pencil of a projection on its fiber;
* ``not_a_gbp``: the defining quadratic relation fails, with an
  auditable witness.

``classify_direct_sum`` is the same dichotomy with heterogeneous fiber
dimensions (finitely many blocks of a direct sum).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, norms
from .core import DEFAULT_TOL
from .gbp import UnimodularScalar, _lambda_value
from .norms import NormSpec, SamplingBudget

REFLECTION_AVERAGE = "reflection_average"
POINTWISE_GBP = "pointwise_gbp"
NOT_A_GBP = "not_a_gbp"


@dataclass(frozen=True, eq=False)
class WcoSpec:
    """A finite weighted composition operator.

    ``phi`` is a permutation of point indices; ``weights[w]`` maps the
    fiber at phi(w) to the fiber at w, so its shape is
    (fiber_dims[w], fiber_dims[phi(w)]) and the two dimensions must agree
    for the weight to be invertible.  ``fiber_norms[w]`` is the norm on
    the fiber at w.
    """

    fiber_dims: tuple[int, ...]
    phi: tuple[int, ...]
    weights: tuple[np.ndarray, ...]
    fiber_norms: tuple[NormSpec, ...]
    points: tuple[str, ...] = ()

    def __post_init__(self):
        dims = tuple(int(d) for d in self.fiber_dims)
        phi = tuple(int(i) for i in self.phi)
        weights = tuple(core.as_operator(w) for w in self.weights)
        fiber_norms = tuple(self.fiber_norms)
        m = len(dims)
        if m == 0:
            raise ValueError("need at least one point")
        if any(d < 1 for d in dims):
            raise ValueError("fiber dimensions must be >= 1")
        if len(phi) != m or sorted(phi) != list(range(m)):
            raise ValueError("phi must be a permutation of the point indices")
        if len(weights) != m or len(fiber_norms) != m:
            raise ValueError("need one weight and one norm per point")
        for w in range(m):
            if dims[w] != dims[phi[w]]:
                raise ValueError(
                    f"phi maps point {phi[w]} (dim {dims[phi[w]]}) to point {w} "
                    f"(dim {dims[w]}); fiber dimensions must match"
                )
            if weights[w].shape != (dims[w], dims[phi[w]]):
                raise ValueError(
                    f"weight at point {w} has shape {weights[w].shape}, "
                    f"expected {(dims[w], dims[phi[w]])}"
                )
        points = tuple(self.points) if self.points else tuple(f"w{i}" for i in range(m))
        if len(points) != m:
            raise ValueError("need one label per point")
        object.__setattr__(self, "fiber_dims", dims)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "fiber_norms", fiber_norms)
        object.__setattr__(self, "points", points)

    @classmethod
    def uniform(cls, phi, weights, fiber_norm: NormSpec, points=()) -> "WcoSpec":
        """All fibers share one dimension and one norm."""
        weights = tuple(core.as_operator(w) for w in weights)
        dims = tuple(w.shape[0] for w in weights)
        return cls(dims, tuple(phi), weights, tuple(fiber_norm for _ in weights), points)

    @property
    def num_points(self) -> int:
        return len(self.fiber_dims)

    @property
    def total_dim(self) -> int:
        return sum(self.fiber_dims)

    @property
    def is_uniform(self) -> bool:
        return (
            len(set(self.fiber_dims)) == 1
            and all(norms.specs_match(s, self.fiber_norms[0]) for s in self.fiber_norms)
        )

    def block_slices(self) -> list[slice]:
        offsets = np.concatenate([[0], np.cumsum(self.fiber_dims)])
        return [slice(int(offsets[i]), int(offsets[i + 1])) for i in range(self.num_points)]


def assemble(spec: WcoSpec) -> np.ndarray:
    """Block operator on the direct sum of fibers: block row w holds the
    weight u_w at block column phi(w)."""
    n = spec.total_dim
    out = np.zeros((n, n), dtype=complex)
    slices = spec.block_slices()
    for w in range(spec.num_points):
        out[slices[w], slices[spec.phi[w]]] = spec.weights[w]
    return out


def ambient_norm(spec: WcoSpec, x) -> float:
    """Max over points of the fiber norm of the corresponding block."""
    x = core.as_vector(x, spec.total_dim)
    slices = spec.block_slices()
    return max(
        norms.eval_norm(spec.fiber_norms[w], x[slices[w]]) for w in range(spec.num_points)
    )


def quadratic_residual(t, lam) -> float:
    """max|T^2 - (lambda+1) T + lambda I|; zero exactly when T is the
    lambda-pencil of a projection (lambda != 1)."""
    t = core.as_operator(t)
    lam = _lambda_value(lam)
    if abs(lam - 1.0) <= 1e-15:
        raise ValueError("lambda = 1 leaves the projection undetermined")
    eye = core.identity(t.shape[0])
    return core.max_abs(t @ t - (lam + 1.0) * t + lam * eye)


def fiber_verdicts(
    spec: WcoSpec,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> list[norms.IsometryVerdict]:
    """Per-point isometry verdicts for the weights under their fiber norms."""
    _check_norms_along_phi(spec, tol)
    return [
        norms.isometry_verdict(spec.weights[w], spec.fiber_norms[w], budget, tol)
        for w in range(spec.num_points)
    ]


def certify_ambient_isometry(
    spec: WcoSpec,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Structural certificate that the assembled operator preserves the
    ambient norm: each block of Tf is a certified-isometric image of one
    block of f, and the max over points is permutation-invariant."""
    try:
        verdicts = fiber_verdicts(spec, budget, tol)
    except ValueError:
        return False
    return all(v.certified for v in verdicts)


def _check_norms_along_phi(spec: WcoSpec, tol: float) -> None:
    for w in range(spec.num_points):
        if not norms.specs_match(spec.fiber_norms[w], spec.fiber_norms[spec.phi[w]], tol):
            raise ValueError(
                f"fiber norms at points {w} and {spec.phi[w]} differ; isometry "
                "certification across distinct norm families is unsupported"
            )


@dataclass(frozen=True)
class WcoWitness:
    """Auditable reason for a not-a-gbp outcome."""

    kind: str
    value: float | None = None
    point: int | None = None


@dataclass(frozen=True, eq=False)
class GbpClassification:
    """One side of the dichotomy, with the data that proves it."""

    case: str
    lam: complex
    reflection: np.ndarray | None = None
    involution_pairs: tuple[tuple[int, int], ...] | None = None
    point_projections: tuple[np.ndarray, ...] | None = None
    witness: WcoWitness | None = None


def classify(
    spec: WcoSpec,
    lam,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> GbpClassification:
    """GBP dichotomy for a uniform spec (all fibers share dimension and norm)."""
    if not spec.is_uniform:
        raise ValueError("classify requires uniform fibers; use classify_direct_sum")
    return _classify(spec, lam, budget, tol)


def classify_direct_sum(
    spec: WcoSpec,
    lam,
    budget: SamplingBudget | None = None,
    tol: float = DEFAULT_TOL,
) -> GbpClassification:
    """GBP dichotomy for heterogeneous blocks of a finite direct sum."""
    return _classify(spec, lam, budget, tol)


def _classify(
    spec: WcoSpec,
    lam,
    budget: SamplingBudget | None,
    tol: float,
) -> GbpClassification:
    lamv = _lambda_value(lam)
    if abs(abs(lamv) - 1.0) > tol:
        raise ValueError(f"lambda must be unimodular, got |lambda| = {abs(lamv)}")
    if abs(lamv - 1.0) <= tol:
        raise ValueError("lambda must differ from 1")
    for w, verdict in enumerate(fiber_verdicts(spec, budget, tol)):
        if not verdict.certified:
            raise ValueError(
                f"weight at point {w} is not a certified isometry of its fiber norm "
                f"(status: {verdict.status})"
            )

    t = assemble(spec)
    residual = quadratic_residual(t, lamv)
    if residual > tol:
        return GbpClassification(
            NOT_A_GBP, lamv, witness=WcoWitness("quadratic_residual", value=residual)
        )

    phi = spec.phi
    moved = [w for w in range(spec.num_points) if phi[w] != w]
    if moved:
        if abs(lamv + 1.0) > tol:
            return GbpClassification(
                NOT_A_GBP,
                lamv,
                witness=WcoWitness("lambda_not_minus_one", value=abs(lamv + 1.0), point=moved[0]),
            )
        for w in moved:
            if phi[phi[w]] != w:
                return GbpClassification(
                    NOT_A_GBP, lamv, witness=WcoWitness("phi_not_involution", point=w)
                )
        for w in range(spec.num_points):
            eye = core.identity(spec.fiber_dims[w])
            dev = core.max_abs(spec.weights[w] @ spec.weights[phi[w]] - eye)
            if dev > tol:
                kind = "weight_pair_not_inverse" if w in moved else "weight_not_involution"
                return GbpClassification(
                    NOT_A_GBP, lamv, witness=WcoWitness(kind, value=dev, point=w)
                )
        pairs = tuple((w, phi[w]) for w in moved if w < phi[w])
        return GbpClassification(REFLECTION_AVERAGE, lamv, reflection=t, involution_pairs=pairs)

    projections = []
    for w in range(spec.num_points):
        eye = core.identity(spec.fiber_dims[w])
        p = (spec.weights[w] - lamv * eye) / (1.0 - lamv)
        if not core.is_idempotent(p, tol):
            return GbpClassification(
                NOT_A_GBP,
                lamv,
                witness=WcoWitness(
                    "point_projection_not_idempotent",
                    value=core.max_abs(p @ p - p),
                    point=w,
                ),
            )
        projections.append(p)
    return GbpClassification(POINTWISE_GBP, lamv, point_projections=tuple(projections))
