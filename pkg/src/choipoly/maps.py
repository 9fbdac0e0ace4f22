"""Linear maps M_m -> M_n through their Choi matrices and Choi polynomials.

The Choi matrix is ``C = sum_ij e_ij ⊗ phi(e_ij)``, so block (i, j) of ``C``
is ``phi(e_ij)``.  The Choi polynomial is ``P(x, y) = y* phi(x x*) y``.
"""

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import (
    DEFAULT_TOL,
    DimensionError,
    Dims,
    NotHermitianError,
    check_bipartite,
    check_dims,
    check_square,
    check_vector,
    is_hermitian,
)
from .forms import (
    DecomposabilityCert,
    GramForm,
    IndecomposabilityWitness,
    verify_decomposability,
    verify_indecomposability,
)
from .linalg import (
    hermitian_eig,
    is_psd,
    kron,
    partial_transpose_first,
    partial_transpose_second,
    product_factors,
)
from .optimize import MinReport, ProductPair, SeesawConfig, find_ppt_witness, seesaw_min


@dataclass(frozen=True)
class LinearMap:
    """A linear map phi: M_m -> M_n stored as its Choi matrix."""

    choi: np.ndarray
    dims: Dims

    def __post_init__(self):
        dims = check_dims(self.dims)
        c = check_bipartite(self.choi, dims, "choi").copy()
        c.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "choi", c)

    @classmethod
    def from_blocks(cls, blocks) -> "LinearMap":
        """Build from an m x m grid whose (i, j) entry is the n x n matrix phi(e_ij)."""
        m = len(blocks)
        if m == 0 or any(len(row) != m for row in blocks):
            raise DimensionError("blocks must be a non-empty square grid")
        arrs = [[np.asarray(b, dtype=complex) for b in row] for row in blocks]
        n = arrs[0][0].shape[0]
        for b in itertools.chain.from_iterable(arrs):
            if b.shape != (n, n):
                raise DimensionError(f"every block must be {n} x {n}, got {b.shape}")
        return cls(np.block(arrs), Dims(m, n))

    @classmethod
    def from_function(cls, func, m, n) -> "LinearMap":
        """Tabulate ``func`` on the matrix units e_ij of M_m."""
        blocks = []
        for i in range(m):
            row = []
            for j in range(m):
                e = np.zeros((m, m), dtype=complex)
                e[i, j] = 1.0
                out = np.asarray(func(e), dtype=complex)
                if out.shape != (n, n):
                    raise DimensionError(f"func must return {n} x {n} matrices, got {out.shape}")
                row.append(out)
            blocks.append(row)
        return cls.from_blocks(blocks)

    @classmethod
    def identity(cls, m) -> "LinearMap":
        return cls.from_function(lambda x: x, m, m)

    @property
    def blocks(self) -> np.ndarray:
        """Array ``b[i, j]`` equal to phi(e_ij)."""
        m, n = self.dims
        return self.choi.reshape(m, n, m, n).transpose(0, 2, 1, 3)

    def __call__(self, x) -> np.ndarray:
        return apply_map(self, x)

    def __add__(self, other):
        if tuple(other.dims) != tuple(self.dims):
            raise DimensionError("cannot add maps with different dims")
        return LinearMap(self.choi + other.choi, self.dims)

    def __rmul__(self, scalar):
        return LinearMap(scalar * self.choi, self.dims)


def apply_map(phi: LinearMap, x) -> np.ndarray:
    """phi(X) = sum_ij X[i, j] phi(e_ij)."""
    x = check_square(x, phi.dims.m, "X")
    return np.einsum("ij,ijkl->kl", x, phi.blocks)


def choi_poly_eval(phi: LinearMap, x, y) -> complex:
    """P(x, y) = (conj(x) ⊗ y)* C (conj(x) ⊗ y) = y* phi(x x*) y."""
    x = check_vector(x, phi.dims.m, "x")
    y = check_vector(y, phi.dims.n, "y")
    z = kron(x.conj(), y)
    return complex(z.conj() @ phi.choi @ z)


def choi_to_gram(phi: LinearMap) -> GramForm:
    """Gram matrix of the Choi polynomial: the first-factor partial transpose of C."""
    return GramForm(partial_transpose_first(phi.choi, phi.dims), phi.dims)


def gram_to_map(g: GramForm) -> LinearMap:
    return LinearMap(partial_transpose_first(g.W, g.dims), g.dims)


def coeffs_from_map(phi: LinearMap) -> np.ndarray:
    """p[i, j, k, l] = (l, k) entry of phi(e_ij)."""
    return np.einsum("ijlk->ijkl", phi.blocks).copy()


def map_from_coeffs(p) -> LinearMap:
    """Inverse of :func:`coeffs_from_map`: the (l, k) entry of phi(e_ij) is p[i, j, k, l]."""
    p = np.asarray(p, dtype=complex)
    if p.ndim != 4 or p.shape[0] != p.shape[1] or p.shape[2] != p.shape[3]:
        raise DimensionError(f"coefficient tensor must have shape (m, m, n, n), got {p.shape}")
    m, n = p.shape[0], p.shape[2]
    blocks = np.einsum("ijkl->ijlk", p)
    return LinearMap(blocks.transpose(0, 2, 1, 3).reshape(m * n, m * n), Dims(m, n))


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"

    def __str__(self):
        return self.value


@dataclass
class MapClassification:
    self_adjoint: bool
    completely_positive: bool
    completely_copositive: bool
    real_preserving: bool
    positive: Verdict
    decomposable: Verdict
    min_report: Optional[MinReport] = None
    negative_pair: Optional[ProductPair] = None
    nonreal_point: Optional[tuple] = None
    decomposition: Optional[DecomposabilityCert] = None
    witness: Optional[IndecomposabilityWitness] = None
    notes: list = field(default_factory=list)


def _candidate_vectors(d):
    """Deterministic probe vectors: basis vectors and pairwise sums with 1 and i."""
    eye = np.eye(d, dtype=complex)
    yield from eye
    for i, j in itertools.combinations(range(d), 2):
        yield eye[i] + eye[j]
        yield eye[i] + 1j * eye[j]


def find_nonreal_point(phi: LinearMap, tol=DEFAULT_TOL):
    """Return (x, y, P(x, y)) with a non-real Choi polynomial value, or None."""
    best = None
    for x in _candidate_vectors(phi.dims.m):
        for y in _candidate_vectors(phi.dims.n):
            val = choi_poly_eval(phi, x, y)
            if abs(val.imag) > tol and (best is None or abs(val.imag) > abs(best[2].imag)):
                best = (x, y, val)
    return best


def negative_product_eigenvector_check(phi: LinearMap, tol=DEFAULT_TOL) -> Optional[ProductPair]:
    """Look for a product eigenvector of C with negative eigenvalue.

    If ``w = x0 ⊗ y0`` is such an eigenvector then P(conj(x0), y0) < 0, so phi
    is not positive.  Returns that pair normalized, or None when no negative
    eigenvector is a product vector (which is inconclusive).
    """
    if not is_hermitian(phi.choi, tol):
        raise NotHermitianError("Choi matrix is not Hermitian")
    w, v = hermitian_eig(phi.choi, tol)
    for lam, vec in zip(w, v.T):
        if lam >= -tol:
            break
        factors = product_factors(vec, phi.dims, tol)
        if factors is not None:
            x0, y0 = factors
            return ProductPair.normalized(x0.conj(), y0)
    return None


def _decomposition_from_cones(g: GramForm, cp: bool, cocp: bool) -> Optional[DecomposabilityCert]:
    zero = np.zeros_like(g.W)
    if cp:
        return DecomposabilityCert(zero, g.gamma, g.dims)
    if cocp:
        return DecomposabilityCert(np.array(g.W), zero, g.dims)
    return None


def classify(
    phi: LinearMap,
    tol=DEFAULT_TOL,
    config: Optional[SeesawConfig] = None,
    certificates=(),
    search_witness=False,
) -> MapClassification:
    """Classify a map: self-adjoint, CP, coCP, positive and decomposable.

    Positivity is decided numerically by multistart see-saw on the Choi
    polynomial: YES when the minimum over unit product vectors is at least
    ``-tol``, NO only with an explicit product pair of negative value.
    Decomposability needs a verified certificate: CP or coCP give one
    directly, supplied certificates are checked, and a failed positivity test
    rules it out.  Otherwise it stays UNDECIDED.
    """
    config = config or SeesawConfig()
    c = phi.choi
    g = choi_to_gram(phi)
    sa = is_hermitian(c, tol)
    cp = sa and is_psd(c, tol)
    cocp = sa and is_psd(partial_transpose_second(c, phi.dims), tol)
    real_preserving = bool(np.all(np.abs(c.imag) <= tol))
    result = MapClassification(
        self_adjoint=sa,
        completely_positive=cp,
        completely_copositive=cocp,
        real_preserving=real_preserving,
        positive=Verdict.UNDECIDED,
        decomposable=Verdict.UNDECIDED,
    )

    if not sa:
        # positive maps preserve Hermiticity, so a non-real value rules positivity out
        result.nonreal_point = find_nonreal_point(phi, tol)
        result.positive = Verdict.NO
        result.decomposable = Verdict.NO
        return result

    g = GramForm((g.W + g.W.conj().T) / 2, g.dims)
    pair = negative_product_eigenvector_check(phi, tol)
    report = seesaw_min(g, config)
    result.min_report = report
    if pair is None and report.value < -tol:
        pair = report.argmin
    if pair is not None:
        result.negative_pair = pair
        result.positive = Verdict.NO
    else:
        result.positive = Verdict.YES

    cert = _decomposition_from_cones(g, cp, cocp)
    for supplied in certificates:
        if isinstance(supplied, DecomposabilityCert) and verify_decomposability(g, supplied, tol):
            cert = cert or supplied
        elif isinstance(supplied, IndecomposabilityWitness) and verify_indecomposability(g, supplied, tol):
            result.witness = supplied
    if cert is not None:
        result.decomposition = cert
        result.decomposable = Verdict.YES
    elif result.positive is Verdict.NO:
        result.decomposable = Verdict.NO
    else:
        if result.witness is None and search_witness:
            result.witness = find_ppt_witness(g, tol)
        if result.witness is not None:
            result.decomposable = Verdict.NO
        elif dimension_rule(*phi.dims):
            result.notes.append("m + n <= 5: every positive map of these dimensions is decomposable")
    return result


def dimension_rule(m, n) -> bool:
    """True iff every positive map M_m -> M_n is decomposable (m + n <= 5)."""
    m, n = check_dims((m, n))
    return m + n <= 5


def phi0_map(alpha, beta) -> LinearMap:
    """X -> [[x11, a x12 + b x21], [conj(a) x21 + conj(b) x12, d x22]], sqrt(d) = |b| + 1."""
    alpha, beta = complex(alpha), complex(beta)
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise ValueError("alpha must have modulus 1")
    d = (abs(beta) + 1.0) ** 2

    def phi0(x):
        return np.array(
            [
                [x[0, 0], alpha * x[0, 1] + beta * x[1, 0]],
                [alpha.conjugate() * x[1, 0] + beta.conjugate() * x[0, 1], d * x[1, 1]],
            ]
        )

    return LinearMap.from_function(phi0, 2, 2)


def stormer_decompose_phi0(alpha, beta):
    """Split phi0 = phi1 + phi2 with phi1(X) = A* X A (CP) and phi2(X) = B* X^t B (coCP).

    Returns ``(A, B, phi1, phi2)``.  The free phases of A and B are fixed to 0.
    For beta = 0 the copositive part vanishes and phi1 = phi0.
    """
    alpha, beta = complex(alpha), complex(beta)
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise ValueError("alpha must have modulus 1")
    mod = abs(beta)
    root = np.sqrt(1.0 + mod)
    a = np.diag([alpha.conjugate() / root, root])
    if mod == 0.0:
        b = np.zeros((2, 2), dtype=complex)
    else:
        b = np.diag([np.sqrt(mod) / root, beta * root / np.sqrt(mod)])
    phi1 = LinearMap.from_function(lambda x: a.conj().T @ x @ a, 2, 2)
    phi2 = LinearMap.from_function(lambda x: b.conj().T @ x.T @ b, 2, 2)
    return a, b, phi1, phi2


def find_map_witness(phi: LinearMap, tol=DEFAULT_TOL) -> Optional[IndecomposabilityWitness]:
    """Heuristic PPT witness search for the Choi polynomial of ``phi``."""
    return find_ppt_witness(choi_to_gram(phi), tol)
