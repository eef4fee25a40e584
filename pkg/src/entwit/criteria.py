"""Separability criteria: PPT, CCNR (realignment), de Vicente and correlation tensor.

Every criterion returns a :class:`CriterionResult` carrying its diagnostic
value even when nothing is detected, so callers can report margins.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bipartite import _operand, correlation_matrix, partial_transpose_B, realign
from .errors import EmptyGrid
from .linalg import DEFAULT_TOL, frobenius_norm, min_eigenvalue, trace_norm
from .witness import split_blocks

DETECT_TOL = 1e-9
DEFAULT_CT_VALUES = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_CT_GRID = tuple(itertools.product(DEFAULT_CT_VALUES, repeat=2))


@dataclass(frozen=True)
class CriterionResult:
    name: str
    value: float
    threshold: float
    detected: bool
    params: tuple | None = None

    @property
    def margin(self):
        """Positive when entanglement is certified."""
        if self.name == "ppt":
            return self.threshold - self.value
        return self.value - self.threshold


def _norm_result(name, value, threshold, params=None):
    return CriterionResult(name, float(value), float(threshold), value > threshold + DETECT_TOL, params)


def ppt(s, tol=DEFAULT_TOL):
    lam = min_eigenvalue(partial_transpose_B(s), tol)
    return CriterionResult("ppt", lam, 0.0, lam < -DETECT_TOL)


def ccnr(s):
    return _norm_result("ccnr", trace_norm(realign(s)), 1.0)


def dv(s):
    """de Vicente criterion on the traceless correlation block.

    The value is the Ky Fan norm of the Bloch correlation tensor
    ``T_ij = (dA dB / 4) Tr[rho lambda_i ⊗ lambda_j]`` over unnormalized
    Gell-Mann matrices, which equals ``(dA dB / 2) * ||C[1:, 1:]||_1`` for the
    normalized basis. Separable states satisfy
    ``||T||_1 <= sqrt(dA dB (dA-1)(dB-1)) / 2``.
    """
    _, dA, dB = _operand(s)
    C = correlation_matrix(s)
    value = dA * dB / 2 * trace_norm(C[1:, 1:])
    return _norm_result("dv", value, math.sqrt(dA * dB * (dA - 1) * (dB - 1)) / 2)


def _ct_from_corr(C, dA, dB, x, y):
    if x < 0 or y < 0:
        raise ValueError(f"CT parameters must be non-negative, got ({x}, {y})")
    Dx = np.ones(C.shape[0])
    Dy = np.ones(C.shape[1])
    Dx[0], Dy[0] = x, y
    value = trace_norm(Dx[:, None] * C * Dy[None, :])
    threshold = math.sqrt((dA - 1 + x * x) / dA) * math.sqrt((dB - 1 + y * y) / dB)
    return _norm_result("ct", value, threshold, (float(x), float(y)))


def ct_value(s, x, y):
    """``||D_x C D_y||_1`` against ``N_A(x) N_B(y)``, ``D_x = diag(x, 1, ..., 1)``."""
    _, dA, dB = _operand(s)
    return _ct_from_corr(correlation_matrix(s), dA, dB, x, y)


def ct_scan(s, grid=DEFAULT_CT_GRID, workers=None):
    """Best CT result (largest ``value - threshold``) over a finite ``(x, y)`` grid."""
    grid = list(grid)
    if not grid:
        raise EmptyGrid("ct_scan needs at least one (x, y) point")
    _, dA, dB = _operand(s)
    C = correlation_matrix(s)

    def one(xy):
        return _ct_from_corr(C, dA, dB, *xy)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(one, grid))
    else:
        results = [one(xy) for xy in grid]
    # max() keeps the first maximizer, so ties resolve by grid order
    return max(results, key=lambda r: r.margin)


def block_separability_sufficient(s, tol=DEFAULT_TOL):
    """``||Y||_2^2 <= lambda_min(X) lambda_min(Z)`` on the half/half block split."""
    rho, _, _ = _operand(s)
    X, Y, _, Z = split_blocks(rho)
    lx, lz = min_eigenvalue(X, tol), min_eigenvalue(Z, tol)
    return frobenius_norm(Y) ** 2 <= lx * lz + tol
