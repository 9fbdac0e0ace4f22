"""Worked examples and families, each bundled with its certificates."""

from .horodecki import EdgeReport, edge_check, horodecki_state, ppt_report
from .nonreal import example_f_coeffs, example_f_map
from .phi import (
    PhiFamily,
    phi_decomposability_cert,
    phi_family_map,
    phi_j_epsilon,
    phi_positivity_threshold,
    phi_s_profile,
    phi_subtracted_gram,
    shift_isometry,
)
from .pi import PI_DELTA_REFERENCE, example_pi, pi_delta, pi_indecomposable_witness
from .tau import (
    ObstructionReport,
    TauPositivityReport,
    constrained_ratio_sum,
    tau41,
    tau41_cauchy_schwarz_form,
    tau41_positivity_suite,
    tau41_real_sos_obstruction,
)
from .upb import UpbFamily, tiles_upb, upb_delta, upb_witness

__all__ = [
    "EdgeReport",
    "ObstructionReport",
    "PI_DELTA_REFERENCE",
    "PhiFamily",
    "TauPositivityReport",
    "UpbFamily",
    "constrained_ratio_sum",
    "edge_check",
    "example_f_coeffs",
    "example_f_map",
    "example_pi",
    "horodecki_state",
    "phi_decomposability_cert",
    "phi_family_map",
    "phi_j_epsilon",
    "phi_positivity_threshold",
    "phi_s_profile",
    "phi_subtracted_gram",
    "pi_delta",
    "pi_indecomposable_witness",
    "ppt_report",
    "shift_isometry",
    "tau41",
    "tau41_cauchy_schwarz_form",
    "tau41_positivity_suite",
    "tau41_real_sos_obstruction",
    "tiles_upb",
    "upb_delta",
    "upb_witness",
]
