"""The map τ(X) = 3 diag(X) + diag(S X S*) - X on M_4, S the cyclic shift."""

import itertools
from dataclasses import dataclass

import numpy as np

from ..maps import LinearMap, choi_poly_eval, choi_to_gram
from ..optimize import MinReport, SeesawConfig, seesaw_min

CYCLIC_SHIFT = np.roll(np.eye(4), 1, axis=0)

# basis pairs (i, j), 0-based, with p(e_i, e_j) = 0
BASIS_ZEROS = [(0, 2), (0, 3), (1, 0), (1, 3), (2, 0), (2, 1), (3, 1), (3, 2)]


def tau41() -> LinearMap:
    s = CYCLIC_SHIFT

    def tau(x):
        return 3 * np.diag(np.diag(x)) + np.diag(np.diag(s @ x @ s.T)) - x

    return LinearMap.from_function(tau, 4, 4)


def tau41_cauchy_schwarz_form(x, y) -> float:
    """sum_i (3 a_i + a_{i-1}) b_i - |sum_i conj(x_i) y_i|^2 with a = |x|^2, b = |y|^2."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    a = np.abs(x) ** 2
    b = np.abs(y) ** 2
    return float(np.sum((3 * a + np.roll(a, 1)) * b) - abs(np.vdot(x, y)) ** 2)


def constrained_ratio_sum(u) -> float:
    """sum_i 1 / (3 + u_i)."""
    return float(np.sum(1.0 / (3.0 + np.asarray(u, dtype=float))))


@dataclass
class TauPositivityReport:
    min_report: MinReport
    ratio_max: float
    ratio_samples: int
    form_max_mismatch: float
    form_min: float

    @property
    def seesaw_min(self) -> float:
        return self.min_report.value


def tau41_positivity_suite(cfg=None, samples=10_000, seed=0) -> TauPositivityReport:
    """Numerical evidence that the Choi polynomial of τ is nonnegative.

    (a) see-saw minimum of the Gram form; (b) the ratio inequality
    sum 1/(3 + u_i) <= 1 on random positive u with u1 u2 u3 u4 = 1;
    (c) agreement of the Choi polynomial with the weighted Cauchy-Schwarz
    expression at random points, and the minimum of that expression.
    """
    cfg = cfg or SeesawConfig(restarts=200)
    phi = tau41()
    report = seesaw_min(choi_to_gram(phi), cfg)

    rng = np.random.default_rng(seed)
    u = np.exp(rng.uniform(-4.0, 4.0, size=(samples, 3)))
    u = np.column_stack([u, 1.0 / np.prod(u, axis=1)])
    ratios = np.sum(1.0 / (3.0 + u), axis=1)

    mismatch = 0.0
    form_min = np.inf
    for _ in range(200):
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        y = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        direct = tau41_cauchy_schwarz_form(x, y)
        mismatch = max(mismatch, abs(choi_poly_eval(phi, x, y) - direct))
        form_min = min(form_min, direct)
    return TauPositivityReport(report, float(ratios.max()), samples, mismatch, float(form_min))


def real_choi_poly(x, y) -> float:
    return float(np.real(choi_poly_eval(tau41(), x, y)))


def sign_vectors():
    return [np.array(s, dtype=float) for s in itertools.product((1.0, -1.0), repeat=4)]


@dataclass
class ObstructionReport:
    basis_zero_values: list
    sign_zero_values: list
    constraint_matrix: np.ndarray
    null_space: np.ndarray
    null_dim: int
    span_distance: float
    monomial_residual: float

    @property
    def max_zero_violation(self) -> float:
        return float(max(abs(v) for v in self.basis_zero_values + self.sign_zero_values))


def diagonal_difference_basis() -> np.ndarray:
    """Coefficient matrices of x_k y_k - x_1 y_1 for k = 2, 3, 4, flattened row-major."""
    out = []
    for k in range(1, 4):
        c = np.zeros((4, 4))
        c[k, k] = 1.0
        c[0, 0] = -1.0
        out.append(c.reshape(-1))
    return np.array(out)


def _orthonormal_rows(mat, tol=1e-10):
    _, s, vh = np.linalg.svd(mat)
    rank = int(np.sum(s > tol * max(s[0], 1e-300)))
    return vh[:rank]


def _null_space(mat, tol=1e-10):
    _, s, vh = np.linalg.svd(mat)
    rank = int(np.sum(s > tol * max(s[0], 1e-300)))
    return vh[rank:]


def _monomial_key(i, k, j, l):
    return (min(i, k), max(i, k), min(j, l), max(j, l))


def _square_products(basis):
    """Monomial coefficients of F_a F_b for bilinear forms F = sum c_ij x_i y_j.

    Returns a matrix whose columns index the products and whose rows index the
    monomials x_i x_k y_j y_l, plus the list of monomial keys.
    """
    keys = sorted({_monomial_key(i, k, j, l) for i, k, j, l in itertools.product(range(4), repeat=4)})
    index = {key: t for t, key in enumerate(keys)}
    cols = []
    for a, b in itertools.combinations_with_replacement(range(len(basis)), 2):
        ca = basis[a].reshape(4, 4)
        cb = basis[b].reshape(4, 4)
        col = np.zeros(len(keys))
        for i, j, k, l in itertools.product(range(4), repeat=4):
            coef = ca[i, j] * cb[k, l]
            if coef:
                col[index[_monomial_key(i, k, j, l)]] += coef
        cols.append(col)
    return np.array(cols).T, index


def tau41_real_sos_obstruction() -> ObstructionReport:
    """Show that the real restriction of the τ Choi polynomial is not a real bilinear SOS.

    Every bilinear form in such a sum vanishes at the zeros of p; the 24 zero
    constraints cut the 16 coefficients down to the traceless diagonal forms,
    and squares of those cannot produce the monomial x_4^2 y_1^2 that p has.
    """
    eye = np.eye(4)
    basis_vals = [real_choi_poly(eye[i], eye[j]) for i, j in BASIS_ZEROS]
    signs = sign_vectors()
    sign_vals = [real_choi_poly(s, s) for s in signs]

    rows = []
    for i, j in BASIS_ZEROS:
        row = np.zeros((4, 4))
        row[i, j] = 1.0
        rows.append(row.reshape(-1))
    for s in signs:
        rows.append(np.outer(s, s).reshape(-1))
    constraints = np.array(rows)
    null = _null_space(constraints)

    target = _orthonormal_rows(diagonal_difference_basis())
    # distance between subspaces: norm of the difference of orthogonal projectors
    span_distance = float(np.linalg.norm(null.T @ null - target.T @ target, 2)) if null.shape[0] else np.inf

    products, index = _square_products(null)
    rhs = np.zeros(products.shape[0])
    rhs[index[_monomial_key(3, 3, 0, 0)]] = 1.0
    coef, *_ = np.linalg.lstsq(products, rhs, rcond=None)
    residual = float(np.linalg.norm(products @ coef - rhs))
    return ObstructionReport(basis_vals, sign_vals, constraints, null, null.shape[0], span_distance, residual)
