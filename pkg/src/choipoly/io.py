"""JSON encoding of matrices and of the objects built from them.

Complex matrices are stored as ``{"rows": r, "cols": c, "data": [[re, im], ...]}``
in row-major order.  Output is canonical (sorted keys, shortest round-trip
floats) so that equal objects serialize to identical bytes.
"""

import json
import math

import numpy as np

from ._validation import DimensionError, check_dims
from .forms import DecomposabilityCert, GramForm, IndecomposabilityWitness
from .maps import LinearMap


class FormatError(ValueError):
    """Malformed JSON document."""


def _real(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"{what}: expected a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise FormatError(f"{what}: non-finite number")
    return v


def _clean(x):
    # -0.0 and 0.0 are the same matrix entry; keep the output canonical
    x = float(x)
    return 0.0 if x == 0.0 else x


def matrix_to_json(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionError("only 2-D matrices can be serialized")
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "data": [[_clean(z.real), _clean(z.imag)] for z in a.reshape(-1)],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise FormatError("matrix must be an object with rows, cols and data")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise FormatError("rows and cols must be nonnegative integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise FormatError(f"data must hold rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=complex)
    for t, entry in enumerate(data):
        if isinstance(entry, list) and len(entry) == 2:
            out[t] = complex(_real(entry[0], "data"), _real(entry[1], "data"))
        else:
            # plain numbers are accepted as real entries for hand-written inputs
            out[t] = _real(entry, "data")
    return out.reshape(rows, cols)


def _dims_from_json(obj):
    dims = obj.get("dims")
    if not isinstance(dims, list) or len(dims) != 2:
        raise FormatError("dims must be a list [m, n]")
    try:
        return check_dims(dims)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad dims: {exc}") from exc


def form_to_json(g: GramForm):
    return {"type": "form", "dims": list(g.dims), "W": matrix_to_json(g.W)}


def form_from_json(obj) -> GramForm:
    if not isinstance(obj, dict) or "W" not in obj:
        raise FormatError("form must be an object with dims and W")
    return GramForm(matrix_from_json(obj["W"]), _dims_from_json(obj))


def map_to_json(phi: LinearMap):
    return {"type": "map", "dims": list(phi.dims), "choi": matrix_to_json(phi.choi)}


def map_from_json(obj) -> LinearMap:
    """Accepts ``choi`` (mn x mn) or ``blocks`` (m x m list of n x n matrices)."""
    if not isinstance(obj, dict):
        raise FormatError("map must be a JSON object")
    if "choi" in obj:
        return LinearMap(matrix_from_json(obj["choi"]), _dims_from_json(obj))
    if "blocks" in obj:
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or not all(isinstance(row, list) for row in blocks):
            raise FormatError("blocks must be a list of lists of matrices")
        phi = LinearMap.from_blocks([[matrix_from_json(b) for b in row] for row in blocks])
        if "dims" in obj and tuple(_dims_from_json(obj)) != tuple(phi.dims):
            raise DimensionError(f"dims {obj['dims']} disagree with blocks {tuple(phi.dims)}")
        return phi
    raise FormatError("map needs either choi or blocks")


def cert_to_json(cert):
    if isinstance(cert, DecomposabilityCert):
        return {
            "kind": cert.kind,
            "dims": list(cert.dims),
            "Q": matrix_to_json(cert.Q),
            "R": matrix_to_json(cert.R),
        }
    if isinstance(cert, IndecomposabilityWitness):
        return {
            "kind": cert.kind,
            "dims": list(cert.dims),
            "M": matrix_to_json(cert.M),
            "trace_value": cert.trace_value,
        }
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def cert_from_json(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError("certificate must be an object with a kind")
    dims = _dims_from_json(obj)
    kind = obj["kind"]
    if kind == DecomposabilityCert.kind:
        if not {"Q", "R"} <= obj.keys():
            raise FormatError("decomposable certificate needs Q and R")
        return DecomposabilityCert(matrix_from_json(obj["Q"]), matrix_from_json(obj["R"]), dims)
    if kind == IndecomposabilityWitness.kind:
        if "M" not in obj or "trace_value" not in obj:
            raise FormatError("witness needs M and trace_value")
        return IndecomposabilityWitness(
            matrix_from_json(obj["M"]), _real(obj["trace_value"], "trace_value"), dims
        )
    raise FormatError(f"unknown certificate kind {kind!r}")


def dumps(obj) -> str:
    """Canonical JSON text with a trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=False) + "\n"


def write_json(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
