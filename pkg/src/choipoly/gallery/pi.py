"""The 9 x 9 projection Π on C^3 ⊗ C^3 and its indecomposable shifts."""

import functools

import numpy as np

from ..forms import GramForm, IndecomposabilityWitness, shift_form
from ..optimize import SeesawConfig, seesaw_min

_PI_TIMES_18 = np.array(
    [
        [11, -7, 2, 2, 2, 2, 2, 2, 2],
        [-7, 11, 2, 2, 2, 2, 2, 2, 2],
        [2, 2, 11, 2, 2, -7, 2, 2, 2],
        [2, 2, 2, 11, 2, 2, -7, 2, 2],
        [2, 2, 2, 2, 2, 2, 2, 2, 2],
        [2, 2, -7, 2, 2, 11, 2, 2, 2],
        [2, 2, 2, -7, 2, 2, 11, 2, 2],
        [2, 2, 2, 2, 2, 2, 2, 11, -7],
        [2, 2, 2, 2, 2, 2, 2, -7, 11],
    ]
)

# kernel basis of Π, as 3 x 3 matrices K with vec(K) in ker Π
_KERNEL = [
    [[-0.5, -0.5, 0], [0, 1, 0], [0, 0, 0]],
    [[-1, -1, 1], [0, 0, 1], [0, 0, 0]],
    [[-1, -1, 0], [1, 0, 0], [1, 0, 0]],
    [[-1, -1, 0], [0, 0, 0], [0, 1, 1]],
]

PI_DELTA_REFERENCE = 0.0284


def example_pi():
    """Return (Π as a GramForm on C^3 x C^3, [K1, K2, K3, K4])."""
    form = GramForm(_PI_TIMES_18 / 18.0, (3, 3))
    return form, [np.array(k, dtype=complex) for k in _KERNEL]


@functools.lru_cache(maxsize=8)
def pi_delta(cfg=SeesawConfig(restarts=200)) -> float:
    """See-saw estimate of min (x ⊗ y)* Π (x ⊗ y) over unit x, y."""
    form, _ = example_pi()
    return seesaw_min(form, cfg).value


def pi_indecomposable_witness(eps, delta=None, cfg=None):
    """Shifted form Π - eps I together with the witness M = I - Π.

    ``eps`` must lie in (0, delta]; ``delta`` defaults to the see-saw estimate.
    """
    if delta is None:
        delta = pi_delta(cfg) if cfg is not None else pi_delta()
    if not 0.0 < eps <= delta:
        raise ValueError(f"eps must lie in (0, {delta:.6g}], got {eps}")
    form, _ = example_pi()
    shifted = shift_form(form, eps)
    m = np.eye(9) - form.W
    return shifted, IndecomposabilityWitness.for_form(shifted, m)
