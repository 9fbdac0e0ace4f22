"""Witnesses from orthonormal unextendible families of product vectors."""

from dataclasses import dataclass

import numpy as np

from .._validation import DEFAULT_TOL, check_dims
from ..forms import GramForm, IndecomposabilityWitness, shift_form
from ..linalg import is_product_vector, product_factors
from ..optimize import ProductPair, SeesawConfig, seesaw_min


@dataclass(frozen=True)
class UpbFamily:
    vectors: tuple
    dims: tuple

    def __post_init__(self):
        dims = check_dims(self.dims)
        object.__setattr__(self, "dims", dims)
        pairs = tuple(self.vectors)
        object.__setattr__(self, "vectors", pairs)
        if not pairs:
            raise ValueError("family must contain at least one product pair")
        for p in pairs:
            if not isinstance(p, ProductPair) or p.x.shape != (dims.m,) or p.y.shape != (dims.n,):
                raise ValueError(f"every member must be a ProductPair on C^{dims.m} x C^{dims.n}")
        gram = self.matrix.conj().T @ self.matrix
        if np.max(np.abs(gram - np.eye(len(pairs)))) > 1e-12:
            raise ValueError("family is not orthonormal to 1e-12")

    @classmethod
    def from_vectors(cls, vectors, dims, tol=DEFAULT_TOL) -> "UpbFamily":
        """Build from unit vectors in C^{mn}; each must factor as x ⊗ y."""
        dims = check_dims(dims)
        pairs = []
        for z in vectors:
            z = np.asarray(z, dtype=complex)
            factors = product_factors(z, dims, tol)
            if factors is None:
                raise ValueError("family member is not a product vector")
            x, y = factors
            x = x / np.linalg.norm(x)
            y = y / np.linalg.norm(y)
            # carry the global phase of z on the first factor
            pairs.append(ProductPair(x * np.vdot(np.kron(x, y), z), y))
        return cls(tuple(pairs), dims)

    @property
    def k(self) -> int:
        return len(self.vectors)

    @property
    def matrix(self) -> np.ndarray:
        """Columns are the vectors x ⊗ y."""
        return np.column_stack([p.vector for p in self.vectors])

    def projector(self) -> np.ndarray:
        z = self.matrix
        return z @ z.conj().T


def tiles_upb() -> UpbFamily:
    """The five-member Tiles family on C^3 x C^3."""
    e = np.eye(3)
    s = np.sqrt(0.5)
    pairs = [
        (e[0], s * (e[0] - e[1])),
        (s * (e[0] - e[1]), e[2]),
        (e[2], s * (e[1] - e[2])),
        (s * (e[1] - e[2]), e[0]),
        (np.ones(3) / np.sqrt(3), np.ones(3) / np.sqrt(3)),
    ]
    return UpbFamily(tuple(ProductPair.normalized(x, y) for x, y in pairs), (3, 3))


def upb_delta(family: UpbFamily, cfg=None):
    """See-saw minimum of (x ⊗ y)* P_E (x ⊗ y); returns (delta, MinReport)."""
    report = seesaw_min(GramForm(family.projector(), family.dims), cfg or SeesawConfig(restarts=200))
    return report.value, report


def upb_witness(family: UpbFamily, eps=None, cfg=None, tol=DEFAULT_TOL):
    """Return (P_E - eps I, witness M = I - P_E, delta_E).

    ``eps`` defaults to delta_E / 2 and must lie in (0, delta_E].
    """
    for p in family.vectors:
        if not is_product_vector(p.vector, family.dims, tol):
            raise ValueError("family member is not a product vector")
    if family.k >= family.dims.total:
        raise ValueError("family is a complete basis: the witness I - P_E vanishes")
    delta, _ = upb_delta(family, cfg)
    if delta <= tol:
        raise ValueError(f"family not unextendible at this tolerance (delta_E = {delta:.3g})")
    if eps is None:
        eps = delta / 2
    if not 0.0 < eps <= delta:
        raise ValueError(f"eps must lie in (0, {delta:.6g}], got {eps}")
    proj = family.projector()
    form = shift_form(GramForm(proj, family.dims), eps)
    m = np.eye(family.dims.total) - proj
    return form, IndecomposabilityWitness.for_form(form, m), delta
