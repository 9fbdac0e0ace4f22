"""Dense complex linear algebra on C^m ⊗ C^n.

Index convention: the pair (i, k) with i in range(m), k in range(n) maps to
row i*n + k, so ``kron(x, y) = (x1*y1, x1*y2, ..., xm*yn)``.
"""

from typing import NamedTuple

import numpy as np

from ._validation import (
    DEFAULT_TOL,
    DimensionError,
    check_bipartite,
    check_dims,
    check_hermitian,
    check_matrix,
    check_vector,
)


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product with first-factor-major index pairing."""
    return np.kron(np.asarray(a), np.asarray(b))


def _as_blocks(c, dims):
    dims = check_dims(dims)
    c = check_bipartite(c, dims)
    return c.reshape(dims.m, dims.n, dims.m, dims.n), dims


def partial_transpose_second(c, dims) -> np.ndarray:
    """Transpose on the second factor: (A ⊗ B)^Γ = A ⊗ B^t."""
    c4, dims = _as_blocks(c, dims)
    return c4.transpose(0, 3, 2, 1).reshape(dims.total, dims.total)


def partial_transpose_first(c, dims) -> np.ndarray:
    """Transpose on the first factor: (A ⊗ B)^{T1} = A^t ⊗ B."""
    c4, dims = _as_blocks(c, dims)
    return c4.transpose(2, 1, 0, 3).reshape(dims.total, dims.total)


def jacobi_eigh(h, tol=1e-15, max_sweeps=100) -> EigenDecomposition:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then applies the real symmetric Jacobi rotation.
    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol * ||H||_F``.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n == 0 or scale == 0.0:
        return EigenDecomposition(np.zeros(n), v)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diag(a)) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ u
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def hermitian_eig(h, tol=DEFAULT_TOL, method="lapack") -> EigenDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    ``method="lapack"`` delegates to ``numpy.linalg.eigh``; ``method="jacobi"``
    uses :func:`jacobi_eigh`. Both are deterministic for a fixed input.
    """
    h = check_hermitian(h, tol)
    if method == "lapack":
        w, v = np.linalg.eigh(h)
        return EigenDecomposition(w, v)
    if method == "jacobi":
        return jacobi_eigh(h)
    raise ValueError(f"unknown method {method!r}")


def is_psd(h, tol=DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue of Hermitian ``h`` is at least ``-tol``."""
    h = check_hermitian(h, tol)
    if h.size == 0:
        return True
    return bool(np.linalg.eigvalsh(h)[0] >= -tol)


def min_eigenvalue(h, tol=DEFAULT_TOL) -> float:
    h = check_hermitian(h, tol)
    return float(np.linalg.eigvalsh(h)[0])


def numerical_rank(a, tol=DEFAULT_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    a = check_matrix(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def kernel_projector(h, tol=DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto eigenvectors with eigenvalue <= tol * λ_max."""
    w, v = hermitian_eig(h, tol)
    cutoff = tol * max(abs(w[-1]), abs(w[0]), 1e-300) if w.size else 0.0
    k = v[:, w <= cutoff]
    return k @ k.conj().T


def schmidt_singular_values(z, dims) -> np.ndarray:
    """Singular values (descending) of the m x n row-major reshape of ``z``."""
    dims = check_dims(dims)
    z = check_vector(z, dims.total, "z")
    return np.linalg.svd(z.reshape(dims.m, dims.n), compute_uv=False)


def product_factors(z, dims, tol=DEFAULT_TOL):
    """Split ``z = x ⊗ y`` if ``z`` has Schmidt rank one, else return None."""
    dims = check_dims(dims)
    z = check_vector(z, dims.total, "z")
    u, s, vh = np.linalg.svd(z.reshape(dims.m, dims.n))
    if s[0] == 0.0 or (s.size > 1 and s[1] > tol * s[0]):
        return None
    root = np.sqrt(s[0])
    return u[:, 0] * root, vh[0] * root


def is_product_vector(z, dims, tol=DEFAULT_TOL) -> bool:
    return product_factors(z, dims, tol) is not None


def check_projection(p, tol=DEFAULT_TOL, name="projection") -> np.ndarray:
    p = check_hermitian(p, tol, name)
    if p.size and np.max(np.abs(p @ p - p)) > tol * max(1.0, p.shape[0]):
        raise ValueError(f"{name} is not idempotent")
    return p


__all__ = [
    "DimensionError",
    "EigenDecomposition",
    "check_projection",
    "hermitian_eig",
    "is_product_vector",
    "is_psd",
    "jacobi_eigh",
    "kernel_projector",
    "kron",
    "min_eigenvalue",
    "numerical_rank",
    "partial_transpose_first",
    "partial_transpose_second",
    "product_factors",
    "schmidt_singular_values",
]
