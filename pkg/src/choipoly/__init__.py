"""Positive linear maps and biquadratic forms with checkable decomposability certificates."""

from ._validation import DEFAULT_TOL, DimensionError, Dims, NotHermitianError
from .forms import (
    DecomposabilityCert,
    GramForm,
    IndecomposabilityWitness,
    blf_gram,
    check_sos_blf,
    check_sos_slf,
    coeffs_from_gram,
    eval_form,
    gram_from_coeffs,
    shift_form,
    slf_gram,
    verify_decomposability,
    verify_indecomposability,
)
from .linalg import (
    hermitian_eig,
    is_psd,
    kernel_projector,
    numerical_rank,
    partial_transpose_first,
    partial_transpose_second,
)
from .maps import (
    LinearMap,
    MapClassification,
    Verdict,
    apply_map,
    choi_poly_eval,
    choi_to_gram,
    classify,
    coeffs_from_map,
    gram_to_map,
    map_from_coeffs,
)
from .optimize import SeesawConfig, SeesawMaximizer, SeesawMinimizer, seesaw_min

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DecomposabilityCert",
    "DimensionError",
    "Dims",
    "GramForm",
    "IndecomposabilityWitness",
    "LinearMap",
    "MapClassification",
    "NotHermitianError",
    "SeesawConfig",
    "SeesawMaximizer",
    "SeesawMinimizer",
    "Verdict",
    "apply_map",
    "blf_gram",
    "check_sos_blf",
    "check_sos_slf",
    "choi_poly_eval",
    "choi_to_gram",
    "classify",
    "coeffs_from_gram",
    "coeffs_from_map",
    "eval_form",
    "gram_from_coeffs",
    "gram_to_map",
    "hermitian_eig",
    "is_psd",
    "kernel_projector",
    "map_from_coeffs",
    "numerical_rank",
    "partial_transpose_first",
    "partial_transpose_second",
    "seesaw_min",
    "shift_form",
    "slf_gram",
    "verify_decomposability",
    "verify_indecomposability",
]
