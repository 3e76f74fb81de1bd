"""Command-line interface.

Reports are line-oriented ``key = value`` text: values are JSON fragments
(operators and vectors in the same [re, im] encoding as the file formats)
so the output is both human-readable and machine-parseable.  Every report
echoes the tolerance, seed, and budgets that produced it.

Exit codes: 0 when a verdict was reached (certified or unknown), 1 for
falsified/not-a-projection/not-a-gbp outcomes and failed repro checks,
2 for input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from .. import core, dft, gbp, norms, wco
from ..gbp import UnimodularScalar
from . import files, repro

#: Optional environment override for the default tolerance.
ENV_TOL = "GBPLAB_TOL"


def _default_tol() -> float:
    return float(os.environ.get(ENV_TOL, "1e-10"))


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, complex):
        return files._pair(v)
    if isinstance(v, np.ndarray):
        return files.emit_operator(v) if v.ndim == 2 else files.emit_vector(v)
    if isinstance(v, UnimodularScalar):
        if v.angle is not None:
            return f"{v.angle.numerator}/{v.angle.denominator}"
        return files._pair(v.value)
    if isinstance(v, frozenset):
        return "{" + ", ".join(str(i) for i in sorted(v)) + "}"
    if v is None:
        return "none"
    return str(v)


class Report:
    def __init__(self):
        self.rows: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.rows.append((key, _fmt_value(value)))

    def echo(self, args, **extra) -> None:
        self.add("command", args.command)
        self.add("tol", args.tol)
        for key, value in extra.items():
            self.add(key, value)

    def emit(self, stream=None) -> None:
        stream = stream or sys.stdout
        for key, value in self.rows:
            print(f"{key} = {value}", file=stream)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def parse_lambda(text: str) -> UnimodularScalar:
    """p/q for the exact root of unity exp(2*pi*i*p/q), or re,im for a raw
    unimodular value."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        frac = Fraction(int(num), int(den))
        return UnimodularScalar.root_of_unity(frac.numerator, frac.denominator)
    if "," in text:
        re_part, _, im_part = text.partition(",")
        return UnimodularScalar.from_complex(complex(float(re_part), float(im_part)))
    raise ValueError(f"lambda must be 'p/q' or 're,im', got {text!r}")


def _resolve_samples(args, default: int) -> int:
    return default if args.samples is None else args.samples


def _budget(args, default_samples: int = 10_000) -> norms.SamplingBudget:
    return norms.SamplingBudget(samples=_resolve_samples(args, default_samples), seed=args.seed)


def _add_verdict(rep: Report, prefix: str, verdict: norms.IsometryVerdict) -> None:
    rep.add(f"{prefix}.status", verdict.status)
    rep.add(f"{prefix}.method", verdict.method)
    rep.add(f"{prefix}.samples_used", verdict.samples_used)
    if verdict.witness is not None:
        rep.add(f"{prefix}.witness", verdict.witness)


def cmd_check_projection(args) -> int:
    p = files.parse_operator(_read(args.file))
    rep = Report()
    budget = _budget(args)
    rep.echo(args, seed=budget.seed, samples=budget.samples)
    idem = core.is_idempotent(p, args.tol)
    rep.add("idempotent", idem)
    rep.add("idempotency_residual", core.max_abs(p @ p - p))
    falsified = not idem
    if idem:
        rep.add("rank", len(core.range_basis(p, args.tol)))
        rep.add("kernel_dim", len(core.kernel_basis(p, args.tol)))
        if args.lam is not None and args.norm is not None:
            lam = parse_lambda(args.lam)
            spec = files.parse_norm(_read(args.norm))
            report = gbp.analyze_gbp(p, lam, spec, budget, args.tol)
            rep.add("lambda", report.lam)
            _add_verdict(rep, "pencil", report.verdict)
            rep.add("pairwise.status", report.pairwise_verdict.status)
            rep.add("pairwise.samples_used", report.pairwise_verdict.samples_used)
            if report.pairwise_verdict.pair is not None:
                rep.add("pairwise.range_vector", report.pairwise_verdict.pair[0])
                rep.add("pairwise.kernel_vector", report.pairwise_verdict.pair[1])
            if report.reflection is not None:
                rep.add("reflection.operator", report.reflection)
                _add_verdict(rep, "reflection.isometry", report.reflection_isometric)
            falsified = report.verdict.falsified or report.pairwise_verdict.falsified
    rep.emit()
    return 1 if falsified else 0


def cmd_reflect(args) -> int:
    t = files.parse_operator(_read(args.file))
    lam = parse_lambda(args.lam)
    rep = Report()
    rep.echo(args)
    rep.add("lambda", lam)
    r = gbp.build_reflection(t, lam, args.tol)
    rep.add("reflection.operator", r)
    for j in range(r.shape[0]):
        rep.add(f"reflection.apply_e{j + 1}", r[:, j])
    rep.add("involution_residual", core.max_abs(r @ r - core.identity(r.shape[0])))
    rep.emit()
    return 0


def cmd_isometry(args) -> int:
    t = files.parse_operator(_read(args.file))
    spec = files.parse_norm(_read(args.norm))
    budget = _budget(args)
    rep = Report()
    rep.echo(args, seed=budget.seed, samples=budget.samples)
    verdict = norms.isometry_verdict(t, spec, budget, args.tol)
    _add_verdict(rep, "verdict", verdict)
    rep.emit()
    return 1 if verdict.falsified else 0


def cmd_pairwise(args) -> int:
    p = files.parse_operator(_read(args.file))
    lam = parse_lambda(args.lam)
    spec = files.parse_norm(_read(args.norm))
    budget = _budget(args)
    rep = Report()
    rep.echo(args, seed=budget.seed, samples=budget.samples)
    rep.add("lambda", lam)
    verdict = gbp.pairwise_condition(p, lam, spec, budget, args.tol)
    rep.add("pairwise.status", verdict.status)
    rep.add("pairwise.samples_used", verdict.samples_used)
    if verdict.pair is not None:
        rep.add("pairwise.range_vector", verdict.pair[0])
        rep.add("pairwise.kernel_vector", verdict.pair[1])
    rep.emit()
    return 1 if verdict.falsified else 0


def cmd_lambda_group(args) -> int:
    p = files.parse_operator(_read(args.file))
    spec = files.parse_norm(_read(args.norm))
    random_samples = _resolve_samples(args, 1000)
    rep = Report()
    rep.echo(args, seed=args.seed, samples=random_samples, max_order=args.max_order)
    report = gbp.lambda_group(
        p,
        spec,
        max_order=args.max_order,
        random_samples=random_samples,
        seed=args.seed,
        tol=args.tol,
    )
    rep.add("classification", report.classification)
    rep.add("order", report.order)
    rep.add("candidate_policy", report.candidate_policy)
    rep.add("candidates_tested", report.candidates_tested)
    rep.add("members.count", len(report.members))
    for i, member in enumerate(report.members):
        rep.add(f"members.{i}", member)
    rep.add("random.certified", report.random_certified)
    rep.add("random.falsified", report.random_falsified)
    rep.add("random.unknown", report.random_unknown)
    rep.emit()
    return 0


def cmd_dft_decide(args) -> int:
    z = files.parse_vector(_read(args.file))
    rep = Report()
    rep.echo(args)
    subset = dft.decide_projection_coeffs(z, args.tol)
    rep.add("alpha", dft.dft(z))
    if subset is None:
        rep.add("result", "not_a_projection")
        rep.emit()
        return 1
    rep.add("result", "projection")
    rep.add("S", subset)
    rep.emit()
    return 0


def _parse_subset(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(tok) for tok in text.split(","))


def cmd_dft_synthesize(args) -> int:
    t = files.parse_operator(_read(args.file))
    subset = _parse_subset(args.subset)
    rep = Report()
    rep.echo(args, order=args.order)
    p, z = dft.synthesize_projection(t, args.order, subset, args.tol)
    rep.add("S", subset)
    rep.add("projection", p)
    rep.add("coefficients", z)
    rep.add("idempotency_residual", core.max_abs(p @ p - p))
    rep.emit()
    return 0


def cmd_spectral(args) -> int:
    t = files.parse_operator(_read(args.file))
    rep = Report()
    rep.echo(args, order=args.order)
    decomp = dft.spectral_projections(t, args.order, args.tol)
    eye = core.identity(t.shape[0])
    total = sum(decomp.projections)
    ortho = 0.0
    idem = 0.0
    for i, qi in enumerate(decomp.projections):
        idem = max(idem, core.max_abs(qi @ qi - qi))
        for j, qj in enumerate(decomp.projections):
            if i != j:
                ortho = max(ortho, core.max_abs(qi @ qj))
    for j, q in enumerate(decomp.projections):
        rep.add(f"Q{j}", q)
    rep.add("sum_identity_residual", core.max_abs(total - eye))
    rep.add("orthogonality_residual", ortho)
    rep.add("idempotency_residual", idem)
    rep.add("reconstruction_residual", core.max_abs(decomp.reconstruct() - t))
    rep.emit()
    return 0


def cmd_wco_classify(args) -> int:
    spec = files.parse_wco(_read(args.file))
    lam = parse_lambda(args.lam)
    budget = _budget(args)
    rep = Report()
    rep.echo(args, seed=budget.seed, samples=budget.samples)
    rep.add("lambda", lam)
    result = wco.classify_direct_sum(spec, lam, budget, args.tol)
    rep.add("case", result.case)
    if result.case == wco.REFLECTION_AVERAGE:
        rep.add("reflection.operator", result.reflection)
        rep.add(
            "involution_pairs",
            "; ".join(f"{spec.points[a]}<->{spec.points[b]}" for a, b in result.involution_pairs),
        )
    elif result.case == wco.POINTWISE_GBP:
        for w, p in enumerate(result.point_projections):
            rep.add(f"projection.{spec.points[w]}", p)
    else:
        rep.add("witness.kind", result.witness.kind)
        if result.witness.value is not None:
            rep.add("witness.value", result.witness.value)
        if result.witness.point is not None:
            rep.add("witness.point", spec.points[result.witness.point])
    rep.emit()
    return 1 if result.case == wco.NOT_A_GBP else 0


def cmd_repro(args) -> int:
    checks = repro.run_repro(args.id, args.repro_tol)
    rep = Report()
    rep.echo(args, id=args.id, repro_tol=args.repro_tol)
    rep.add("description", repro.DESCRIPTIONS[args.id])
    all_passed = True
    for check in checks:
        status = "pass" if check.passed else "fail"
        rep.add(f"check.{check.name}", status)
        if not check.passed:
            all_passed = False
            rep.add(f"check.{check.name}.expected", check.expected)
            rep.add(f"check.{check.name}.actual", check.actual)
    rep.add("all_passed", all_passed)
    rep.emit()
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbplab",
        description="Construct, verify, and classify generalized bi-circular projections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, norm=False, lam=False) -> None:
        p.add_argument("--tol", type=float, default=_default_tol(), help="absolute entrywise tolerance")
        p.add_argument("--seed", type=int, default=0, help="seed for all sampling")
        p.add_argument(
            "--samples", type=int, default=None, help="sampling budget (default 10000; 1000 for lambda-group)"
        )
        p.add_argument("--max-order", type=int, default=24, dest="max_order", help="largest root-of-unity order")
        if norm:
            p.add_argument("--norm", required=norm == "required", help="path to a norm file")
        if lam:
            p.add_argument(
                "--lambda", dest="lam", required=lam == "required", help="unimodular scalar: p/q or re,im"
            )

    p = sub.add_parser("check-projection", help="idempotency, rank, and optional GBP report")
    p.add_argument("file", help="operator file")
    common(p, norm=True, lam=True)
    p.set_defaults(func=cmd_check_projection)

    p = sub.add_parser("reflect", help="reflection from a finite-order operator")
    p.add_argument("file", help="operator file")
    common(p, lam="required")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("isometry", help="three-valued isometry verdict")
    p.add_argument("file", help="operator file")
    common(p, norm="required")
    p.set_defaults(func=cmd_isometry)

    p = sub.add_parser("pairwise", help="range/kernel pairwise norm test")
    p.add_argument("file", help="projection operator file")
    common(p, norm="required", lam="required")
    p.set_defaults(func=cmd_pairwise)

    p = sub.add_parser("lambda-group", help="multiplicative group of admissible lambdas")
    p.add_argument("file", help="projection operator file")
    common(p, norm="required")
    p.set_defaults(func=cmd_lambda_group)

    p = sub.add_parser("dft-decide", help="do these coefficients make a projection?")
    p.add_argument("file", help="coefficient vector file")
    common(p)
    p.set_defaults(func=cmd_dft_decide)

    p = sub.add_parser("dft-synthesize", help="projection from a subset of spectral parts")
    p.add_argument("file", help="operator file")
    common(p)
    p.add_argument("--order", type=int, required=True, help="order k with T^k = I")
    p.add_argument("--subset", default="", help="comma-separated subset of 0..k-1 (empty for {})")
    p.set_defaults(func=cmd_dft_synthesize)

    p = sub.add_parser("spectral", help="spectral projections of a finite-order operator")
    p.add_argument("file", help="operator file")
    common(p)
    p.add_argument("--order", type=int, required=True, help="order k with T^k = I")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("wco-classify", help="GBP dichotomy for a weighted composition operator")
    p.add_argument("file", help="weighted composition spec file")
    common(p, lam="required")
    p.set_defaults(func=cmd_wco_classify)

    p = sub.add_parser("repro", help="rerun a bundled worked example against its expected values")
    p.add_argument("id", choices=repro.FIXTURE_IDS, help="fixture id")
    common(p)
    p.add_argument(
        "--repro-tol", type=float, default=repro.DEFAULT_REPRO_TOL, dest="repro_tol",
        help="comparison tolerance for fixture expectations",
    )
    p.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except files.FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
