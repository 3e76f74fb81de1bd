"""Dense complex linear algebra shared by every higher-level module.

Operators are plain square numpy arrays (complex128) and vectors are
one-dimensional arrays.  All comparisons are absolute and entrywise:
the max norm ``max|A_ij|`` against a single tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Default absolute entrywise tolerance.  The worked examples all live on
#: the unit scale, so an absolute threshold is appropriate; every public
#: function takes ``tol`` to override it.
DEFAULT_TOL = 1e-10


def as_operator(entries) -> np.ndarray:
    """Coerce to a square complex matrix, rejecting NaN/Inf entries."""
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def as_vector(entries, dim: int | None = None) -> np.ndarray:
    """Coerce to a complex vector, optionally checking its length."""
    v = np.asarray(entries, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if not np.isfinite(v).all():
        raise ValueError("vector entries must be finite")
    if dim is not None and v.size != dim:
        raise ValueError(f"expected dimension {dim}, got {v.size}")
    return v


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def max_abs(a) -> float:
    """Entrywise max norm ``max|a_ij|``."""
    return float(np.max(np.abs(a)))


def mat_apply(a, x) -> np.ndarray:
    """Matrix-vector product with dimension validation."""
    a = as_operator(a)
    x = as_vector(x, a.shape[0])
    return a @ x


def mat_mul(a, b) -> np.ndarray:
    """Matrix product of two operators of equal dimension."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def mat_pow(a, n: int) -> np.ndarray:
    """Nonnegative matrix power; ``mat_pow(a, 0)`` is the identity."""
    a = as_operator(a)
    n = int(n)
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    return np.linalg.matrix_power(a, n)


@dataclass(frozen=True)
class OrderCertificate:
    """Result of a finite-order search.

    ``order`` is the smallest k with ``max|T^k - I| <= tol``, or None if no
    power up to ``max_order`` matched.  ``residuals[i-1]`` records the
    deviation of T^i from the identity for every power tried, which helps
    when diagnosing near-order operators.
    """

    order: int | None
    max_order: int
    residuals: tuple[float, ...]

    @property
    def found(self) -> bool:
        return self.order is not None


def detect_order(t, max_order: int, tol: float = DEFAULT_TOL) -> OrderCertificate:
    """Smallest k <= max_order with T^k = I entrywise, else a not-found value."""
    t = as_operator(t)
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    eye = identity(t.shape[0])
    power = eye
    residuals: list[float] = []
    for k in range(1, max_order + 1):
        power = power @ t
        residual = max_abs(power - eye)
        residuals.append(residual)
        if residual <= tol:
            return OrderCertificate(k, max_order, tuple(residuals))
    return OrderCertificate(None, max_order, tuple(residuals))


def is_idempotent(p, tol: float = DEFAULT_TOL) -> bool:
    p = as_operator(p)
    return max_abs(p @ p - p) <= tol


def is_involution(r, tol: float = DEFAULT_TOL) -> bool:
    r = as_operator(r)
    return max_abs(r @ r - identity(r.shape[0])) <= tol


def _pivoted_columns(m: np.ndarray, tol: float) -> list[np.ndarray]:
    """Maximal independent set of columns of ``m`` by Gaussian elimination
    with column pivoting; a column counts as nonzero while its residual
    exceeds ``tol * dim``.  Returns the selected original columns."""
    n = m.shape[0]
    work = m.astype(complex, copy=True)
    threshold = tol * n
    selected: list[int] = []
    for _ in range(n):
        col_norms = np.abs(work).max(axis=0)
        j = int(np.argmax(col_norms))
        if col_norms[j] <= threshold:
            break
        col = work[:, j].copy()
        i = int(np.argmax(np.abs(col)))
        selected.append(j)
        work -= np.outer(col, work[i, :] / col[i])
        work[:, j] = 0.0
    selected.sort()
    return [m[:, j].copy() for j in selected]


def range_basis(p, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of the range of an idempotent, drawn from its own columns.

    Columns of P lie in the range and P fixes them, so no eigensolver is
    needed; independence is decided by pivoted elimination.
    """
    p = as_operator(p)
    if not is_idempotent(p, tol):
        raise ValueError("range_basis requires an idempotent input")
    return _pivoted_columns(p, tol)


def kernel_basis(p, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of the kernel of an idempotent, drawn from the columns of I - P."""
    p = as_operator(p)
    if not is_idempotent(p, tol):
        raise ValueError("kernel_basis requires an idempotent input")
    return _pivoted_columns(identity(p.shape[0]) - p, tol)
