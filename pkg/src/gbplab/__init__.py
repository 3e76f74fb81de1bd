"""Workbench for generalized bi-circular projections on finite-dimensional
complex normed spaces: pencil constructions, reflection synthesis, norm
renormings, isometry verdicts, Fourier projection-coefficient decisions,
and weighted-composition classification."""

from .core import (
    DEFAULT_TOL,
    OrderCertificate,
    detect_order,
    is_idempotent,
    is_involution,
    kernel_basis,
    mat_apply,
    mat_mul,
    mat_pow,
    range_basis,
)
# the dft/idft transform functions stay namespaced under gbplab.dft to keep
# the submodule importable as an attribute of the package
from .dft import (
    SpectralDecomposition,
    decide_projection_coeffs,
    indicator,
    spectral_projections,
    synthesize_projection,
)
from .gbp import (
    GbpReport,
    LambdaGroupReport,
    PairwiseVerdict,
    UnimodularScalar,
    analyze_gbp,
    build_reflection,
    even_order_reflection_check,
    lambda_group,
    n_circular,
    pairwise_condition,
    pencil,
)
from .norms import (
    IsometryVerdict,
    Lp,
    NormSpec,
    OrbitMax,
    PermDiagIsometry,
    SamplingBudget,
    SumRenorm,
    Sup,
    decompose_perm_diag,
    eval_norm,
    isometry_verdict,
    sample_unit_sphere,
)
from .wco import (
    GbpClassification,
    WcoSpec,
    WcoWitness,
    assemble,
    ambient_norm,
    classify,
    classify_direct_sum,
    quadratic_residual,
)

__all__ = [
    "DEFAULT_TOL",
    "GbpClassification",
    "GbpReport",
    "IsometryVerdict",
    "LambdaGroupReport",
    "Lp",
    "NormSpec",
    "OrbitMax",
    "OrderCertificate",
    "PairwiseVerdict",
    "PermDiagIsometry",
    "SamplingBudget",
    "SpectralDecomposition",
    "SumRenorm",
    "Sup",
    "UnimodularScalar",
    "WcoSpec",
    "WcoWitness",
    "ambient_norm",
    "analyze_gbp",
    "assemble",
    "build_reflection",
    "classify",
    "classify_direct_sum",
    "decide_projection_coeffs",
    "decompose_perm_diag",
    "detect_order",
    "even_order_reflection_check",
    "eval_norm",
    "indicator",
    "is_idempotent",
    "is_involution",
    "isometry_verdict",
    "kernel_basis",
    "lambda_group",
    "mat_apply",
    "mat_mul",
    "mat_pow",
    "n_circular",
    "pairwise_condition",
    "pencil",
    "quadratic_residual",
    "range_basis",
    "sample_unit_sphere",
    "spectral_projections",
    "synthesize_projection",
]
