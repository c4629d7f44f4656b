"""JSON encoding of matrices, targets and torus points.

Complex scalars are ``[re, im]`` pairs and matrices are lists of rows.
Floats are printed with 17 significant digits so that parsing the output
gives back the same doubles.
"""

import json
import math

import numpy as np

from .invariants import GL, SO, AlgebraKind
from .errors import GZError
from .moment import FiberTarget
from .solvar_gl import TorusPoint
from .solvar_so import SoTorusPoint


class FormatError(ValueError):
    """Malformed JSON input."""


def _float(v):
    v = float(v)
    if not math.isfinite(v):
        raise ValueError("cannot serialize a non-finite number")
    return format(v, ".17g")


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        out.append(f"[{_float(obj.real)}, {_float(obj.imag)}]")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for k, (key, val) in enumerate(obj.items()):
            if k:
                out.append(", ")
            out.append(json.dumps(str(key)) + ": ")
            _emit(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for k, val in enumerate(obj):
            if k:
                out.append(", ")
            _emit(val, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """Serialize plain data, complex numbers and arrays (complex as ``[re, im]``)."""
    out = []
    _emit(obj, out)
    return "".join(out)


def parse_complex(v):
    if isinstance(v, bool):
        raise FormatError("expected a number")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in v):
        return complex(v[0], v[1])
    raise FormatError(f"expected a number or [re, im] pair, got {v!r}")


def parse_vector(v):
    if not isinstance(v, list):
        raise FormatError("expected a list")
    return np.array([parse_complex(e) for e in v], dtype=complex)


def parse_matrix(v):
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise FormatError("matrix must be a non-empty list of rows")
    rows = [parse_vector(r) for r in v]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise FormatError("matrix must be square")
    return np.vstack(rows)


def matrix_to_json(x):
    return [[complex(v) for v in row] for row in np.asarray(x)]


def _kind(data):
    try:
        return AlgebraKind(data["kind"], int(data["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad kind/n: {exc}") from exc


def target_to_json(c):
    levels = []
    for i, lev in enumerate(c.levels, start=1):
        if c.kind.family == GL:
            levels.append({"eigenvalues": list(lev.values)})
        else:
            entry = {"block_params": list(lev.values)}
            if i % 2 == 0:
                entry["pfaffian_sign"] = lev.pfaffian_sign
            levels.append(entry)
    return {"kind": c.kind.family, "n": c.kind.n, "levels": levels}


def target_from_json(data):
    """Parse a target; ``so`` block parameters are normalized with their sign bit."""
    if not isinstance(data, dict):
        raise FormatError("target must be an object")
    kind = _kind(data)
    levels = data.get("levels")
    if not isinstance(levels, list) or len(levels) != kind.n:
        raise FormatError(f"target needs {kind.n} levels")
    try:
        if kind.family == GL:
            spectra = [parse_vector(lev["eigenvalues"]) for lev in levels]
            return FiberTarget.from_spectra(kind, spectra)
        spectra = [parse_vector(lev["block_params"]) for lev in levels]
        signs = {}
        for i, lev in enumerate(levels, start=1):
            if i % 2 == 0:
                sign = int(lev.get("pfaffian_sign", 1))
                if sign not in (1, -1):
                    raise FormatError("pfaffian_sign must be +1 or -1")
                signs[i] = sign
        return FiberTarget.from_spectra(kind, spectra, signs)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad target level: {exc}") from exc


def torus_to_json(z):
    if isinstance(z, TorusPoint):
        return {"kind": GL, "n": z.n, "levels": [list(level) for level in z.coords]}
    return {"kind": SO, "n": z.n, "levels": [[list(pair) for pair in level] for level in z.coords]}


def torus_from_json(data, kind=None):
    if not isinstance(data, dict):
        raise FormatError("torus point must be an object")
    if kind is None:
        kind = _kind(data)
    levels = data.get("levels")
    if not isinstance(levels, list):
        raise FormatError("torus point needs a levels list")
    try:
        if kind.family == GL:
            return TorusPoint.from_lists([parse_vector(lev) for lev in levels])
        parsed = [[tuple(parse_vector(pair)) for pair in lev] for lev in levels]
        return SoTorusPoint.from_lists(kind.n, parsed)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (FormatError, GZError)):
            raise
        raise FormatError(f"bad torus point: {exc}") from exc

