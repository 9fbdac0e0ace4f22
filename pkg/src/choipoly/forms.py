"""Biquadratic forms p(x, y) = (x ⊗ y)* W (x ⊗ y) and their Gram matrices.

Coefficient tensors are stored in full as arrays ``p[i, j, k, l]`` for the
monomial ``x_i conj(x_j) y_k conj(y_l)``.  Row-major ``vec`` is used
throughout, so ``vec(x y^t) = kron(x, y)``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import (
    DEFAULT_TOL,
    DimensionError,
    Dims,
    NotHermitianError,
    check_bipartite,
    check_dims,
    check_matrix,
    check_vector,
    is_hermitian,
)
from .linalg import is_psd, kron, partial_transpose_second


@dataclass(frozen=True)
class GramForm:
    """A biquadratic form on C^m x C^n given by its Gram matrix ``W``."""

    W: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = check_dims(self.dims)
        w = check_bipartite(self.W, dims, "W").copy()
        w.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "W", w)

    def is_hermitian(self, tol=DEFAULT_TOL) -> bool:
        return is_hermitian(self.W, tol)

    def __call__(self, x, y) -> complex:
        return eval_form(self, x, y)

    @property
    def gamma(self) -> np.ndarray:
        return partial_transpose_second(self.W, self.dims)


def _require_hermitian(g: GramForm, tol):
    if not g.is_hermitian(tol):
        raise NotHermitianError("form is not Hermitian symmetric")


def gram_from_coeffs(p) -> GramForm:
    """Gram matrix with ``W[(j,l),(i,k)] = p[i,j,k,l]``."""
    p = np.asarray(p, dtype=complex)
    if p.ndim != 4 or p.shape[0] != p.shape[1] or p.shape[2] != p.shape[3]:
        raise DimensionError(f"coefficient tensor must have shape (m, m, n, n), got {p.shape}")
    m, n = p.shape[0], p.shape[2]
    w = p.transpose(1, 3, 0, 2).reshape(m * n, m * n)
    return GramForm(w, Dims(m, n))


def coeffs_from_gram(g: GramForm) -> np.ndarray:
    m, n = g.dims
    return np.asarray(g.W).reshape(m, n, m, n).transpose(2, 0, 3, 1).copy()


def eval_coeffs(p, x, y) -> complex:
    """Evaluate sum p_ijkl x_i conj(x_j) y_k conj(y_l) directly."""
    p = np.asarray(p, dtype=complex)
    x = check_vector(x, p.shape[0], "x")
    y = check_vector(y, p.shape[2], "y")
    return complex(np.einsum("ijkl,i,j,k,l->", p, x, x.conj(), y, y.conj()))


def eval_form(g: GramForm, x, y) -> complex:
    """(x ⊗ y)* W (x ⊗ y)."""
    x = check_vector(x, g.dims.m, "x")
    y = check_vector(y, g.dims.n, "y")
    z = kron(x, y)
    return complex(z.conj() @ g.W @ z)


def _stack(mats, dims, name):
    mats = [check_matrix(b, name) for b in mats]
    if not mats:
        if dims is None:
            raise DimensionError(f"empty {name} list needs explicit dims")
        return [], check_dims(dims)
    if dims is None:
        dims = mats[0].shape
    dims = check_dims(dims)
    for b in mats:
        if b.shape != tuple(dims):
            raise DimensionError(f"{name} must have shape {tuple(dims)}, got {b.shape}")
    return mats, dims


def blf_gram(a_list, dims=None) -> GramForm:
    """Gram matrix of sum_r |x^t A_r y|^2.

    ``x^t A y = (x ⊗ y)* conj(vec A)``, so the Gram matrix is
    ``sum_r conj(vec A_r) conj(vec A_r)*``, which is PSD.
    """
    mats, dims = _stack(a_list, dims, "A")
    w = np.zeros((dims.total, dims.total), dtype=complex)
    for a in mats:
        v = a.reshape(-1).conj()
        w += np.outer(v, v.conj())
    return GramForm(w, dims)


def slf_gram(b_list, dims=None) -> GramForm:
    """Gram matrix of sum_s |x* B_s y|^2, equal to (sum_s vec B_s vec B_s*)^Γ."""
    mats, dims = _stack(b_list, dims, "B")
    r = np.zeros((dims.total, dims.total), dtype=complex)
    for b in mats:
        v = b.reshape(-1)
        r += np.outer(v, v.conj())
    return GramForm(partial_transpose_second(r, dims), dims)


def check_sos_blf(g: GramForm, tol=DEFAULT_TOL) -> bool:
    """Sum of squared moduli of bilinear forms iff W is PSD."""
    _require_hermitian(g, tol)
    return is_psd(g.W, tol)


def check_sos_slf(g: GramForm, tol=DEFAULT_TOL) -> bool:
    """Sum of squared moduli of sesquilinear forms iff W^Γ is PSD."""
    _require_hermitian(g, tol)
    return is_psd(g.gamma, tol)


def shift_form(g: GramForm, eps) -> GramForm:
    """The form p(x, y) - eps * ||x ⊗ y||^2."""
    return GramForm(g.W - float(eps) * np.eye(g.dims.total), g.dims)


@dataclass(frozen=True)
class DecomposabilityCert:
    """Q, R with Q >= 0, R >= 0 and Q + R^Γ = W."""

    Q: np.ndarray
    R: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = check_dims(self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "Q", check_bipartite(self.Q, dims, "Q"))
        object.__setattr__(self, "R", check_bipartite(self.R, dims, "R"))

    kind = "decomposable"

    def residual(self, g: GramForm) -> float:
        diff = self.Q + partial_transpose_second(self.R, self.dims) - g.W
        return float(np.max(np.abs(diff))) if diff.size else 0.0


@dataclass(frozen=True)
class IndecomposabilityWitness:
    """A PPT matrix M with Tr(W M) < 0, proving W lies outside the decomposable cone."""

    M: np.ndarray
    trace_value: float
    dims: Dims

    kind = "indecomposable-witness"

    def __post_init__(self):
        dims = check_dims(self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "M", check_bipartite(self.M, dims, "M"))
        object.__setattr__(self, "trace_value", float(self.trace_value))

    @classmethod
    def for_form(cls, g: GramForm, m) -> "IndecomposabilityWitness":
        m = check_bipartite(m, g.dims, "M")
        return cls(m, float(np.real(np.trace(g.W @ m))), g.dims)


def _shapes_match(g, cert):
    if tuple(cert.dims) != tuple(g.dims):
        raise DimensionError(f"certificate dims {tuple(cert.dims)} != form dims {tuple(g.dims)}")


def verify_decomposability(g: GramForm, cert: DecomposabilityCert, tol=DEFAULT_TOL) -> bool:
    """Check Q >= -tol, R >= -tol and max|Q + R^Γ - W| <= tol."""
    _shapes_match(g, cert)
    for mat in (cert.Q, cert.R):
        if not is_hermitian(mat, tol) or not is_psd(mat, tol):
            return False
    return cert.residual(g) <= tol


def verify_indecomposability(g: GramForm, wit: IndecomposabilityWitness, tol=DEFAULT_TOL) -> bool:
    """Check M >= 0, M^Γ >= 0 and Tr(W M) < -tol.

    A True result proves that W is not in the decomposable Gram cone.
    The stored ``trace_value`` must also match the recomputed trace.
    """
    _shapes_match(g, wit)
    _require_hermitian(g, tol)
    if not is_hermitian(wit.M, tol):
        raise NotHermitianError("witness M is not Hermitian")
    if not is_psd(wit.M, tol) or not is_psd(partial_transpose_second(wit.M, g.dims), tol):
        return False
    trace = float(np.real(np.trace(g.W @ wit.M)))
    if abs(trace - wit.trace_value) > tol * max(1.0, abs(trace)):
        return False
    return trace < -tol
