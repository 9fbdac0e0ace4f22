"""Edge PPT entangled states and the witnesses built from their kernels."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .._validation import DEFAULT_TOL, check_dims, check_hermitian
from ..forms import GramForm, IndecomposabilityWitness, shift_form
from ..linalg import is_psd, kernel_projector, min_eigenvalue, partial_transpose_second
from ..maps import Verdict
from ..optimize import MinReport, SeesawConfig, seesaw_min


def horodecki_state() -> np.ndarray:
    """The 2 x 4 Horodecki PPT entangled state at parameter 1/2."""
    rho = np.zeros((8, 8))
    rho[np.diag_indices(8)] = [1 / 9, 1 / 9, 1 / 9, 1 / 9, 1 / 6, 1 / 9, 1 / 9, 1 / 6]
    for i, j in [(0, 5), (1, 6), (2, 7)]:
        rho[i, j] = rho[j, i] = 1 / 9
    rho[4, 7] = rho[7, 4] = np.sqrt(3) / 18
    return rho.astype(complex)


@dataclass
class EdgeReport:
    ppt: bool
    P_kernel_proj: np.ndarray
    Q_kernel_proj: np.ndarray
    form: GramForm
    delta: float
    is_edge: Verdict
    min_report: MinReport
    witness: Optional[IndecomposabilityWitness] = None
    witness_form: Optional[GramForm] = None


def ppt_report(rho, dims, tol=DEFAULT_TOL):
    """(min eigenvalue of rho, min eigenvalue of rho^Γ)."""
    rho = check_hermitian(rho, tol, "rho")
    return min_eigenvalue(rho, tol), min_eigenvalue(partial_transpose_second(rho, dims), tol)


def edge_check(
    rho, dims, cfg: Optional[SeesawConfig] = None, eps=None, tol=DEFAULT_TOL, margin=1e-6
) -> EdgeReport:
    """Test whether a PPT state is an edge state via W = P + Q^Γ.

    P and Q project onto ker rho and ker rho^Γ.  A product zero of W is a
    product vector in range(rho) whose partial conjugate lies in range(rho^Γ),
    so a positive minimum ``delta`` of W over unit product vectors means edge.
    The verdict is YES for ``delta > margin``, NO for ``delta <= tol`` (the
    argmin is then an explicit product zero) and UNDECIDED in between.
    If ``eps`` in (0, delta] is given, rho is attached as a witness for the
    indecomposable form W - eps I.
    """
    dims = check_dims(dims)
    rho = check_hermitian(rho, tol, "rho")
    rho_g = partial_transpose_second(rho, dims)
    if not (is_psd(rho, tol) and is_psd(rho_g, tol)):
        raise ValueError("edge_check needs a PPT input (rho >= 0 and rho^Γ >= 0)")
    p = kernel_projector(rho, tol)
    q = kernel_projector(rho_g, tol)
    form = GramForm(p + partial_transpose_second(q, dims), dims)
    report = seesaw_min(form, cfg)
    delta = report.value
    if delta > margin:
        verdict = Verdict.YES
    elif delta <= tol:
        verdict = Verdict.NO
    else:
        verdict = Verdict.UNDECIDED
    result = EdgeReport(True, p, q, form, delta, verdict, report)
    if eps is not None:
        if verdict is not Verdict.YES or not 0.0 < eps <= delta:
            raise ValueError(f"eps must lie in (0, delta] with delta = {delta:.6g} > 0")
        shifted = shift_form(form, eps)
        result.witness_form = shifted
        result.witness = IndecomposabilityWitness.for_form(shifted, rho)
    return result
