"""JSON state files: ``{"dA": int, "dB": int, "matrix": [[re, im], ...]}`` (row-major)."""

import json
import math

import numpy as np

from .bipartite import BipartiteState
from .errors import DimensionMismatch, ParseError
from .linalg import DEFAULT_TOL


def state_to_dict(s):
    flat = np.asarray(s.rho).reshape(-1)
    return {
        "dA": s.dA,
        "dB": s.dB,
        # float repr is the shortest string that round-trips bit-exactly
        "matrix": [[float(z.real), float(z.imag)] for z in flat],
    }


def dumps_state(s):
    return json.dumps(state_to_dict(s))


def save_state(s, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_state(s))
        fh.write("\n")


def _positive_int(doc, key):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ParseError(f"{key!r} must be a positive integer, got {v!r}")
    return v


def state_from_dict(doc, tol=DEFAULT_TOL):
    if not isinstance(doc, dict):
        raise ParseError("state file must hold a JSON object")
    dA, dB = _positive_int(doc, "dA"), _positive_int(doc, "dB")
    entries = doc.get("matrix")
    if not isinstance(entries, list):
        raise ParseError("'matrix' must be a list of [re, im] pairs")
    n = dA * dB
    if len(entries) != n * n:
        raise DimensionMismatch(f"'matrix' has {len(entries)} entries, dims {dA}x{dB} need {n * n}")
    vals = np.empty(n * n, dtype=np.complex128)
    for idx, e in enumerate(entries):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in e)
        ):
            raise ParseError(f"matrix entry {idx} is not a [re, im] pair of numbers: {e!r}")
        if not all(math.isfinite(c) for c in e):
            raise ParseError(f"matrix entry {idx} is not finite: {e!r}")
        vals[idx] = complex(e[0], e[1])
    return BipartiteState(vals.reshape(n, n), dA, dB, tol=tol)


def loads_state(text, tol=DEFAULT_TOL):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return state_from_dict(doc, tol)


def load_state(path, tol=DEFAULT_TOL):
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read(), tol)
