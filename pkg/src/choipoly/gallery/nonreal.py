"""A biquadratic form on C^2 x C^2 whose map is not self-adjoint."""

import numpy as np

from ..maps import LinearMap, map_from_coeffs


def example_f_coeffs(repaired=False) -> np.ndarray:
    """Coefficients p[i, j, k, l] of x_i conj(x_j) y_k conj(y_l) for

    F = 2|x1|^2|y1|^2 - 2i x2 conj(x1)|y1|^2 + 3i x1 conj(x2)|y1|^2 + 3|x2|^2|y2|^2.

    With ``repaired=True`` the x2 conj(x1) coefficient becomes -3i, the
    conjugate of the x1 conj(x2) one, which makes the form real valued.
    """
    p = np.zeros((2, 2, 2, 2), dtype=complex)
    p[0, 0, 0, 0] = 2.0
    p[0, 1, 0, 0] = 3j
    p[1, 0, 0, 0] = -3j if repaired else -2j
    p[1, 1, 1, 1] = 3.0
    return p


def example_f_map(repaired=False) -> LinearMap:
    return map_from_coeffs(example_f_coeffs(repaired))
