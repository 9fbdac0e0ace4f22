"""Alternating ("see-saw") optimization of Hermitian biquadratic forms.

With ``x`` fixed, ``p(x, y) = y* M_x y`` is a Hermitian quadratic form in
``y``, so its minimum over unit ``y`` is the smallest eigenvalue of ``M_x``.
The see-saw alternates the two exact half-steps from random starting points.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import (
    DEFAULT_TOL,
    NotHermitianError,
    check_bipartite,
    check_dims,
    check_vector,
    is_hermitian,
)
from .forms import GramForm, IndecomposabilityWitness, eval_form, verify_indecomposability
from .linalg import check_projection, partial_transpose_second


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 100
    max_iter: int = 500
    tol: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iter < 1 or not self.tol > 0:
            raise ValueError("need restarts >= 1, max_iter >= 1 and tol > 0")


@dataclass(frozen=True)
class ProductPair:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        for v in (self.x, self.y):
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError("product pair vectors must be unit vectors")

    @classmethod
    def normalized(cls, x, y) -> "ProductPair":
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return cls(x / np.linalg.norm(x), y / np.linalg.norm(y))

    @property
    def vector(self) -> np.ndarray:
        return np.kron(self.x, self.y)


@dataclass
class MinReport:
    value: float
    argmin: ProductPair
    restart_values: np.ndarray
    n_iter: np.ndarray
    config: SeesawConfig
    histories: list = field(default_factory=list, repr=False)


def _unit_check(v, length, name):
    v = check_vector(v, length, name)
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise ValueError(f"{name} must be a unit vector")
    return v


def _hermitian_blocks(g: GramForm):
    if not g.is_hermitian():
        raise NotHermitianError("see-saw needs a Hermitian symmetric form")
    m, n = g.dims
    w = (g.W + g.W.conj().T) / 2
    return w.reshape(m, n, m, n)


def reduce_fix_x(g: GramForm, x) -> np.ndarray:
    """n x n matrix M_x = (x ⊗ I)* W (x ⊗ I), so that y* M_x y = p(x, y)."""
    w4 = _hermitian_blocks(g)
    x = _unit_check(x, g.dims.m, "x")
    return np.einsum("a,akbl,b->kl", x.conj(), w4, x)


def reduce_fix_y(g: GramForm, y) -> np.ndarray:
    """m x m matrix M_y = (I ⊗ y)* W (I ⊗ y), so that x* M_y x = p(x, y)."""
    w4 = _hermitian_blocks(g)
    y = _unit_check(y, g.dims.n, "y")
    return np.einsum("k,akbl,l->ab", y.conj(), w4, y)


def _normalize_phase(v):
    idx = np.flatnonzero(np.abs(v) > 1e-12)
    if idx.size:
        v = v * (abs(v[idx[0]]) / v[idx[0]])
    return v


def _min_eigpair(h):
    w, v = np.linalg.eigh(h)
    return w[0], _normalize_phase(v[:, 0])


def random_unit_vector(rng, d) -> np.ndarray:
    """Uniform on the complex unit sphere: normalized complex Gaussian."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def _seesaw_restart(w4, m, n, seed, max_iter, tol):
    rng = np.random.default_rng(seed)
    x = random_unit_vector(rng, m)
    history = []
    prev = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        mx = np.einsum("a,akbl,b->kl", x.conj(), w4, x)
        _, y = _min_eigpair(mx)
        my = np.einsum("k,akbl,l->ab", y.conj(), w4, y)
        val, x = _min_eigpair(my)
        history.append(val)
        if prev - val < tol:
            break
        prev = val
    return x, y, it, np.array(history)


class SeesawMinimizer(BaseEstimator):
    """Multistart see-saw minimizer of p(x, y) over unit vectors x, y.

    Restart ``i`` draws its starting ``x`` from ``default_rng(seed + i)``, so
    results do not depend on ``n_jobs``.  The best restart is chosen by value
    with ties broken by restart index.

    Attributes
    ----------
    value_ : float
        Smallest value found, re-evaluated at ``argmin_``.
    argmin_ : ProductPair
    restart_values_ : ndarray of shape (restarts,)
    n_iter_ : ndarray of shape (restarts,)
    histories_ : list of ndarray
        Objective after every iteration of each restart.
    """

    _sign = 1.0

    def __init__(self, restarts=100, max_iter=500, tol=1e-12, seed=0, n_jobs=None):
        self.restarts = restarts
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed
        self.n_jobs = n_jobs

    def _config(self):
        return SeesawConfig(self.restarts, self.max_iter, self.tol, self.seed)

    def fit(self, X, dims=None):
        """Run the see-saw on a :class:`GramForm` or on a Gram matrix with ``dims``."""
        cfg = self._config()
        if isinstance(X, GramForm):
            g = X
        else:
            if dims is None:
                raise ValueError("dims are required when X is a bare matrix")
            g = GramForm(check_bipartite(X, check_dims(dims), "X"), dims)
        g = GramForm(self._sign * np.asarray(g.W), g.dims)
        w4 = _hermitian_blocks(g)
        m, n = g.dims
        jobs = (
            delayed(_seesaw_restart)(w4, m, n, cfg.seed + i, cfg.max_iter, cfg.tol)
            for i in range(cfg.restarts)
        )
        runs = Parallel(n_jobs=self.n_jobs, prefer="threads")(jobs)
        values = np.array([float(np.real(eval_form(g, x, y))) for x, y, _, _ in runs])
        best = min(range(len(runs)), key=lambda i: (values[i], i))
        x, y, _, _ = runs[best]
        self.argmin_ = ProductPair.normalized(x, y)
        self.restart_values_ = self._sign * values
        self.value_ = self._sign * float(np.real(eval_form(g, self.argmin_.x, self.argmin_.y)))
        self.n_iter_ = np.array([r[2] for r in runs])
        self.histories_ = [self._sign * r[3] for r in runs]
        self.dims_ = g.dims
        return self

    def report(self) -> MinReport:
        check_is_fitted(self, "value_")
        return MinReport(
            self.value_, self.argmin_, self.restart_values_, self.n_iter_, self._config(), self.histories_
        )


class SeesawMaximizer(SeesawMinimizer):
    """Same as :class:`SeesawMinimizer` but estimates the maximum (see-saw on -W)."""

    _sign = -1.0


def _estimator(cls, cfg, n_jobs=None):
    cfg = cfg or SeesawConfig()
    return cls(cfg.restarts, cfg.max_iter, cfg.tol, cfg.seed, n_jobs)


def seesaw_min(g: GramForm, cfg: Optional[SeesawConfig] = None, n_jobs=None) -> MinReport:
    """Estimate min of p(x, y) over unit x, y."""
    return _estimator(SeesawMinimizer, cfg, n_jobs).fit(g).report()


def positivity_threshold_sup(g: GramForm, cfg: Optional[SeesawConfig] = None, n_jobs=None) -> float:
    """Estimate sup of p(x, y) over unit x, y."""
    return _estimator(SeesawMaximizer, cfg, n_jobs).fit(g).value_


def product_vector_in_subspace(p, dims, cfg=None, tol=DEFAULT_TOL, return_report=False):
    """Search range(P) for a product vector by minimizing (x ⊗ y)*(I - P)(x ⊗ y).

    Returns the pair when the minimum drops below ``tol`` and None otherwise;
    None is heuristic evidence only, backed by ``cfg.restarts`` restarts.
    """
    dims = check_dims(dims)
    p = check_projection(check_bipartite(p, dims, "P"), tol)
    report = seesaw_min(GramForm(np.eye(dims.total) - p, dims), cfg)
    pair = report.argmin if report.value < tol else None
    return (pair, report) if return_report else pair


def find_ppt_witness(g: GramForm, tol=DEFAULT_TOL, mix=1e-3, solver="CLARABEL"):
    """Search for M >= 0, M^Γ >= 0, Tr M = 1 with Tr(W M) < 0.

    Solves the small semidefinite program with cvxpy, then mixes the optimum
    with a bit of the maximally mixed state so that both PSD constraints hold
    strictly.  The result is returned only if it passes
    :func:`verify_indecomposability`; otherwise None.
    """
    import cvxpy as cp

    if not is_hermitian(g.W, tol):
        raise NotHermitianError("form is not Hermitian symmetric")
    m, n = g.dims
    w = (g.W + g.W.conj().T) / 2
    real = bool(np.all(np.abs(w.imag) <= tol))
    if real:
        var = cp.Variable((m * n, m * n), symmetric=True)
        objective = cp.trace(w.real @ var)
    else:
        var = cp.Variable((m * n, m * n), hermitian=True)
        objective = cp.real(cp.trace(w @ var))
    constraints = [var >> 0, cp.partial_transpose(var, [m, n], 1) >> 0, cp.trace(var) == 1]
    prob = cp.Problem(cp.Minimize(objective), constraints)
    try:
        prob.solve(solver=solver)
    except cp.error.SolverError:
        return None
    if var.value is None or prob.value is None or prob.value >= -tol:
        return None
    mat = np.asarray(var.value, dtype=complex)
    mat = (mat + mat.conj().T) / 2
    mat = (1.0 - mix) * mat + mix * np.eye(m * n) / (m * n)
    # keep the witness real when the form is real so that JSON output stays clean
    if real:
        mat = mat.real.astype(complex)
    if np.linalg.eigvalsh(partial_transpose_second(mat, g.dims))[0] < 0:
        return None
    wit = IndecomposabilityWitness.for_form(g, mat)
    return wit if verify_indecomposability(g, wit, tol) else None
