"""JSON file formats for operators, vectors, norms, and weighted
composition specs.

Complex numbers are [re, im] pairs; floats are emitted with 17 significant
digits so every value round-trips bit-identically.
"""

from __future__ import annotations

import json

import numpy as np

from .. import core
from ..norms import Lp, NormSpec, OrbitMax, SumRenorm, Sup
from ..wco import WcoSpec


class FileFormatError(ValueError):
    """Malformed input file, with a field-path diagnostic."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _pair(z: complex) -> str:
    return f"[{_fmt(z.real)},{_fmt(z.imag)}]"


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _as_complex(cell, where: str) -> complex:
    if isinstance(cell, (int, float)) and not isinstance(cell, bool):
        return complex(float(cell), 0.0)
    if (
        isinstance(cell, list)
        and len(cell) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in cell)
    ):
        return complex(float(cell[0]), float(cell[1]))
    raise FileFormatError(f"{where}: expected a number or [re, im] pair, got {cell!r}")


def parse_operator(text: str) -> np.ndarray:
    """Parse {"dim": n, "entries": [[[re,im], ...], ...]} row-major."""
    data = _load_json(text, "operator")
    if not isinstance(data, dict):
        raise FileFormatError("operator: expected a JSON object")
    dim = data.get("dim")
    entries = data.get("entries")
    if not isinstance(dim, int) or dim < 1:
        raise FileFormatError(f"operator: 'dim' must be a positive integer, got {dim!r}")
    if not isinstance(entries, list) or len(entries) != dim:
        raise FileFormatError(f"operator: 'entries' must hold {dim} rows")
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            raise FileFormatError(f"operator: entries[{i}] must hold {dim} cells")
        for j, cell in enumerate(row):
            out[i, j] = _as_complex(cell, f"operator: entries[{i}][{j}]")
    if not np.isfinite(out).all():
        raise FileFormatError("operator: entries must be finite")
    return out


def emit_operator(a) -> str:
    a = core.as_operator(a)
    rows = ",".join("[" + ",".join(_pair(z) for z in row) + "]" for row in a)
    return f'{{"dim":{a.shape[0]},"entries":[{rows}]}}'


def parse_vector(text: str) -> np.ndarray:
    """Parse a JSON array of numbers or [re, im] pairs."""
    data = _load_json(text, "vector")
    if not isinstance(data, list) or not data:
        raise FileFormatError("vector: expected a nonempty JSON array")
    out = np.zeros(len(data), dtype=complex)
    for i, cell in enumerate(data):
        out[i] = _as_complex(cell, f"vector: [{i}]")
    if not np.isfinite(out).all():
        raise FileFormatError("vector: entries must be finite")
    return out


def emit_vector(x) -> str:
    x = core.as_vector(x)
    return "[" + ",".join(_pair(z) for z in x) + "]"


_NORM_KINDS = ("lp", "sup", "orbit_max", "sum_renorm")


def _parse_norm_value(data, where: str, depth: int) -> NormSpec:
    if depth > 2:
        raise FileFormatError(f"{where}: norm specs may be nested at most two levels deep")
    if not isinstance(data, dict):
        raise FileFormatError(f"{where}: expected a JSON object")
    kind = data.get("kind")
    if kind == "lp":
        p = data.get("p")
        if not isinstance(p, (int, float)) or isinstance(p, bool) or p < 1:
            raise FileFormatError(f"{where}: 'p' must be a number >= 1, got {p!r}")
        return Lp(float(p))
    if kind == "sup":
        return Sup()
    if kind == "orbit_max":
        base = _parse_norm_value(data.get("base"), f"{where}.base", depth + 1)
        gen = data.get("generator")
        if not isinstance(gen, dict):
            raise FileFormatError(f"{where}: 'generator' must be an operator object")
        order = data.get("order")
        if not isinstance(order, int) or order < 1:
            raise FileFormatError(f"{where}: 'order' must be a positive integer")
        try:
            return OrbitMax(base, parse_operator(json.dumps(gen)), order)
        except ValueError as exc:
            raise FileFormatError(f"{where}: {exc}") from exc
    if kind == "sum_renorm":
        base = _parse_norm_value(data.get("base"), f"{where}.base", depth + 1)
        refl = data.get("reflector")
        if not isinstance(refl, dict):
            raise FileFormatError(f"{where}: 'reflector' must be an operator object")
        try:
            return SumRenorm(base, parse_operator(json.dumps(refl)))
        except ValueError as exc:
            raise FileFormatError(f"{where}: {exc}") from exc
    raise FileFormatError(f"{where}: 'kind' must be one of {_NORM_KINDS}, got {kind!r}")


def parse_norm(text: str) -> NormSpec:
    """Parse a tagged norm record; see the package README for the schema."""
    return _parse_norm_value(_load_json(text, "norm"), "norm", 0)


def emit_norm(spec: NormSpec) -> str:
    if isinstance(spec, Lp):
        return f'{{"kind":"lp","p":{_fmt(spec.p)}}}'
    if isinstance(spec, Sup):
        return '{"kind":"sup"}'
    if isinstance(spec, OrbitMax):
        return (
            f'{{"kind":"orbit_max","base":{emit_norm(spec.base)},'
            f'"generator":{emit_operator(spec.generator)},"order":{spec.order}}}'
        )
    if isinstance(spec, SumRenorm):
        return (
            f'{{"kind":"sum_renorm","base":{emit_norm(spec.base)},'
            f'"reflector":{emit_operator(spec.reflector)}}}'
        )
    raise TypeError(f"not a norm spec: {spec!r}")


def parse_wco(text: str) -> WcoSpec:
    """Parse a weighted composition spec:

    {"fiber_dims": [...], "phi": [...], "weights": [operator, ...],
     "fiber_norm": norm}  (or "fiber_norms": [norm, ...]; "points" optional)
    """
    data = _load_json(text, "wco")
    if not isinstance(data, dict):
        raise FileFormatError("wco: expected a JSON object")
    dims = data.get("fiber_dims")
    phi = data.get("phi")
    weights = data.get("weights")
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise FileFormatError("wco: 'fiber_dims' must be a list of integers")
    if not isinstance(phi, list) or not all(isinstance(i, int) for i in phi):
        raise FileFormatError("wco: 'phi' must be a list of point indices")
    if not isinstance(weights, list):
        raise FileFormatError("wco: 'weights' must be a list of operators")
    ops = []
    for i, w in enumerate(weights):
        if not isinstance(w, dict):
            raise FileFormatError(f"wco: weights[{i}] must be an operator object")
        ops.append(parse_operator(json.dumps(w)))
    if "fiber_norms" in data:
        raw = data["fiber_norms"]
        if not isinstance(raw, list) or len(raw) != len(dims):
            raise FileFormatError("wco: 'fiber_norms' must list one norm per point")
        fiber_norms = [_parse_norm_value(n, f"wco: fiber_norms[{i}]", 0) for i, n in enumerate(raw)]
    elif "fiber_norm" in data:
        shared = _parse_norm_value(data["fiber_norm"], "wco: fiber_norm", 0)
        fiber_norms = [shared for _ in dims]
    else:
        raise FileFormatError("wco: provide 'fiber_norm' or 'fiber_norms'")
    points = data.get("points", ())
    if points and (
        not isinstance(points, list) or not all(isinstance(s, str) for s in points)
    ):
        raise FileFormatError("wco: 'points' must be a list of strings")
    try:
        return WcoSpec(tuple(dims), tuple(phi), tuple(ops), tuple(fiber_norms), tuple(points))
    except ValueError as exc:
        raise FileFormatError(f"wco: {exc}") from exc


def emit_wco(spec: WcoSpec) -> str:
    dims = ",".join(str(d) for d in spec.fiber_dims)
    phi = ",".join(str(i) for i in spec.phi)
    weights = ",".join(emit_operator(w) for w in spec.weights)
    fiber_norms = ",".join(emit_norm(s) for s in spec.fiber_norms)
    points = ",".join(json.dumps(s) for s in spec.points)
    return (
        f'{{"points":[{points}],"fiber_dims":[{dims}],"phi":[{phi}],'
        f'"weights":[{weights}],"fiber_norms":[{fiber_norms}]}}'
    )
