"""The weighted family X -> a Tr(X) I_n - sum_α ε_α V_α X V_α*.

Here V_α: C^m -> C^n is the shifted isometry V_α e_p = f_{p+α}, for
α = 0..r with r = n - m.
"""

from dataclasses import dataclass

import numpy as np

from ..forms import DecomposabilityCert, GramForm, blf_gram
from ..maps import LinearMap, choi_to_gram
from ..optimize import SeesawConfig, positivity_threshold_sup


@dataclass(frozen=True)
class PhiFamily:
    a: float
    m: int
    n: int
    eps: tuple

    def __post_init__(self):
        eps = tuple(float(e) for e in np.atleast_1d(self.eps))
        object.__setattr__(self, "eps", eps)
        if self.m < 1 or self.n < self.m:
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if len(eps) != self.r + 1:
            raise ValueError(f"need r + 1 = {self.r + 1} weights, got {len(eps)}")
        if any(not 0.0 < e <= 1.0 for e in eps):
            raise ValueError("weights must lie in (0, 1]")
        if self.a < 0:
            raise ValueError("a must be nonnegative")

    @property
    def r(self) -> int:
        return self.n - self.m

    @property
    def dims(self):
        return (self.m, self.n)


def shift_isometry(m, n, alpha) -> np.ndarray:
    v = np.zeros((n, m))
    v[np.arange(m) + alpha, np.arange(m)] = 1.0
    return v


def _subtracted_part(spec: PhiFamily):
    isos = [shift_isometry(spec.m, spec.n, k) for k in range(spec.r + 1)]
    return lambda x: sum(e * v @ x @ v.T for e, v in zip(spec.eps, isos))


def phi_family_map(spec: PhiFamily) -> LinearMap:
    sub = _subtracted_part(spec)
    eye = np.eye(spec.n)
    return LinearMap.from_function(lambda x: spec.a * np.trace(x) * eye - sub(x), spec.m, spec.n)


def phi_subtracted_gram(spec: PhiFamily) -> GramForm:
    """Gram matrix of sum_α ε_α |sum_p x_p conj(y_{p+α})|^2."""
    return choi_to_gram(LinearMap.from_function(_subtracted_part(spec), spec.m, spec.n))


def phi_s_profile(spec: PhiFamily) -> np.ndarray:
    """s_j = sum of ε_α for max(0, j - m) <= α <= min(r, j - 1), j = 1..n."""
    return np.array(
        [sum(spec.eps[max(0, j - spec.m) : min(spec.r, j - 1) + 1]) for j in range(1, spec.n + 1)]
    )


def phi_decomposability_cert(spec: PhiFamily) -> DecomposabilityCert:
    """Certificate from an explicit sum of squares.

    The Lagrange identity applied to x and (y_{1+α}, ..., y_{m+α}) gives

        a|x|^2|y|^2 - sum_α ε_α |sum_p x_p conj(y_{p+α})|^2
            = sum_α ε_α sum_{p<q} |x_p y_{q+α} - x_q y_{p+α}|^2
              + sum_{p,j} (a - s_j) |x_p y_j|^2.

    Every square on the right is the modulus of a bilinear form x^t A y, so
    the certificate has R = 0 and Q = blf_gram of the matrices
    sqrt(ε_α)(e_p f_{q+α}^t - e_q f_{p+α}^t) and sqrt(a - s_j) e_p f_j^t.
    """
    s = phi_s_profile(spec)
    if spec.a < s.max() - 1e-15:
        raise ValueError(f"a = {spec.a} < max s_j = {s.max()}: no certificate from this sum of squares")
    m, n = spec.m, spec.n
    mats = []
    for alpha, e in enumerate(spec.eps):
        for p in range(m):
            for q in range(p + 1, m):
                a_mat = np.zeros((m, n))
                a_mat[p, q + alpha] = np.sqrt(e)
                a_mat[q, p + alpha] = -np.sqrt(e)
                mats.append(a_mat)
    for p in range(m):
        for j in range(n):
            a_mat = np.zeros((m, n))
            a_mat[p, j] = np.sqrt(max(spec.a - s[j], 0.0))
            mats.append(a_mat)
    q_mat = blf_gram(mats, (m, n)).W
    return DecomposabilityCert(q_mat, np.zeros_like(q_mat), (m, n))


def phi_j_epsilon(eps) -> np.ndarray:
    """Tridiagonal matrix with diagonal ε_α and off-diagonal sqrt(ε_α ε_{α+1}) / 2."""
    eps = np.asarray(eps, dtype=float)
    if eps.ndim != 1 or eps.size == 0 or np.any(eps <= 0) or np.any(eps > 1):
        raise ValueError("weights must be a non-empty vector in (0, 1]")
    off = np.sqrt(eps[:-1] * eps[1:]) / 2
    return np.diag(eps) + np.diag(off, 1) + np.diag(off, -1)


def phi_positivity_threshold(spec: PhiFamily, cfg=None) -> float:
    """See-saw estimate of sup_x λ_max(sum_α ε_α V_α x x* V_α*).

    The map is positive iff ``a`` is at least this value.
    """
    return positivity_threshold_sup(phi_subtracted_gram(spec), cfg or SeesawConfig())
