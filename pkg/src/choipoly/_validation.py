"""Input validation helpers shared by every module."""

from typing import NamedTuple

import numpy as np

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when array shapes disagree with the bipartite dimensions."""


class NotHermitianError(ValueError):
    """Raised when a Hermitian input is required but not supplied."""


class Dims(NamedTuple):
    """Bipartite dimensions (m, n) of C^m ⊗ C^n."""

    m: int
    n: int

    @property
    def total(self) -> int:
        return self.m * self.n


def check_dims(dims) -> Dims:
    """Coerce ``dims`` to :class:`Dims`, rejecting non-positive entries."""
    try:
        m, n = (int(d) for d in dims)
    except (TypeError, ValueError) as exc:
        raise DimensionError(f"dims must be a pair of integers, got {dims!r}") from exc
    if m < 1 or n < 1:
        raise DimensionError(f"dims must be positive, got ({m}, {n})")
    return Dims(m, n)


def check_matrix(a, name="matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    arr = arr.astype(complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def check_vector(v, length=None, name="vector") -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be a vector, got shape {np.shape(v)}")
    if length is not None and arr.size != length:
        raise DimensionError(f"{name} must have length {length}, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def check_square(a, order=None, name="matrix") -> np.ndarray:
    arr = check_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if order is not None and arr.shape[0] != order:
        raise DimensionError(f"{name} must have order {order}, got {arr.shape[0]}")
    return arr


def check_bipartite(a, dims, name="matrix") -> np.ndarray:
    """Square matrix of order m*n."""
    dims = check_dims(dims)
    return check_square(a, dims.total, name)


def hermitian_defect(a) -> float:
    """Largest entry of |A - A*|."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a, tol=DEFAULT_TOL) -> bool:
    a = np.asarray(a)
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    return hermitian_defect(a) <= tol * scale


def check_hermitian(a, tol=DEFAULT_TOL, name="matrix") -> np.ndarray:
    """Return the Hermitian part of a square matrix that is Hermitian to ``tol``."""
    arr = check_square(a, name=name)
    if not is_hermitian(arr, tol):
        raise NotHermitianError(
            f"{name} is not Hermitian (max |A - A*| = {hermitian_defect(arr):.3e})"
        )
    return (arr + arr.conj().T) / 2
