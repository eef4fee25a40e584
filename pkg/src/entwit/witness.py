"""Witness ``W = O - gamma*I`` built from ``O = C C^dagger`` of the Choi matrix.

For the ``2⊗2`` map the Choi space is 16-dimensional, so ``W`` acts on
``4⊗4`` states. Block formulas use the half/half split of a
``2m x 2m`` matrix into ``m x m`` blocks::

    sigma = [[X, Y], [Y^dagger, Z]]        O = [[A, B], [B^dagger, D]]
"""

import math
from dataclasses import dataclass

import numpy as np

from .bipartite import BipartiteState
from .errors import DimensionMismatch
from .linalg import DEFAULT_TOL, dagger, frobenius_norm, min_eigenvalue
from .posmap import MapParams, choi_matrix

SQRT2 = math.sqrt(2.0)


def build_O(p, dA=2, dB=2):
    C = choi_matrix(p, dA, dB)
    O = C @ dagger(C)
    return (O + dagger(O)) / 2


def split_blocks(M):
    """Return ``(top-left, top-right, bottom-left, bottom-right)`` halves."""
    M = np.asarray(M)
    n = M.shape[0]
    if M.ndim != 2 or M.shape[1] != n or n % 2:
        raise DimensionMismatch(f"half/half split needs an even square matrix, got shape {M.shape}")
    h = n // 2
    return M[:h, :h], M[:h, h:], M[h:, :h], M[h:, h:]


@dataclass(frozen=True)
class BlockDecomposition:
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    A: np.ndarray
    B: np.ndarray
    D: np.ndarray

    def state_matrix(self):
        return np.block([[self.X, self.Y], [dagger(self.Y), self.Z]])

    def O_matrix(self):
        return np.block([[self.A, self.B], [dagger(self.B), self.D]])


def _state_matrix(s, expected_dim):
    rho = s.rho if isinstance(s, BipartiteState) else np.asarray(s)
    if rho.shape != (expected_dim, expected_dim):
        raise DimensionMismatch(
            f"state is {rho.shape[0]}-dimensional but the witness acts on dimension {expected_dim}"
        )
    return rho


def block_decomposition(s, p, dA=2, dB=2):
    O = build_O(p, dA, dB)
    rho = _state_matrix(s, O.shape[0])
    X, Y, _, Z = split_blocks(rho)
    A, B, _, D = split_blocks(O)
    return BlockDecomposition(X, Y, Z, A, B, D)


def gamma_for_state(s, p, dA=2, dB=2):
    """``gamma = 2*(Re Tr[B Y^dagger] + Tr[A] * ||Y||_2)`` for the state's off-diagonal block.

    ``dA, dB`` are the map's local dimensions; the state must live on the
    ``(dA*dB)^2``-dimensional Choi space.
    """
    blk = block_decomposition(s, p, dA, dB)
    cross = np.trace(blk.B @ dagger(blk.Y)).real
    return float(2 * (cross + np.trace(blk.A).real * frobenius_norm(blk.Y)))


def reference_gamma(p):
    """Closed-form ``gamma`` used with the noisy ``4⊗4`` BES family.

    ``(7*sqrt2 - 6)(alpha^2 + beta^2) + 4(sqrt2 - 1)*alpha*beta``. It
    coincides with ``gamma_for_state`` of the noiseless state
    ``bes_4x4(P1, Q1)``.
    """
    p = MapParams.coerce(p)
    a, b = p.alpha, p.beta
    return (7 * SQRT2 - 6) * (a * a + b * b) + 4 * (SQRT2 - 1) * a * b


@dataclass(frozen=True)
class WitnessOperator:
    alpha: float
    beta: float
    gamma: float
    matrix: np.ndarray
    gamma_source: str = "explicit"

    @property
    def dim(self):
        return self.matrix.shape[0]


def build_witness(p, gamma, dA=2, dB=2, gamma_source="explicit"):
    p = MapParams.coerce(p)
    O = build_O(p, dA, dB)
    W = O - float(gamma) * np.eye(O.shape[0])
    W.flags.writeable = False
    return WitnessOperator(p.alpha, p.beta, float(gamma), W, gamma_source)


def witness_for_state(s, p, dA=2, dB=2):
    """Witness whose ``gamma`` comes from :func:`gamma_for_state` on ``s``."""
    return build_witness(p, gamma_for_state(s, p, dA, dB), dA, dB, "gamma_for_state")


def witness_value(s, w):
    """``Re Tr[W rho]``; negative values flag entanglement."""
    rho = _state_matrix(s, w.dim)
    return float(np.einsum("ij,ji->", w.matrix, rho).real)


def witness_verdict(value, tol=DEFAULT_TOL):
    if value < -tol:
        return "entangled"
    if value <= tol:
        return "inconclusive (boundary)"
    return "undetected"


@dataclass(frozen=True)
class FloorCheck:
    """Block test ``||Y||_2^2 <= lambda_min(X) * lambda_min(Z)``.

    ``chain_bound`` is ``2 Tr[A] (sqrt(lambda_min(X) lambda_min(Z)) - ||Y||_2)``,
    the lower bound on ``Tr[W sigma]`` obtained with ``gamma_for_state``
    when both minimum eigenvalues are non-negative (``nan`` otherwise).
    """

    lhs: float
    rhs: float
    holds: bool
    chain_bound: float


def _floor_sides(X, Y, Z, tol):
    lx, lz = min_eigenvalue(X, tol), min_eigenvalue(Z, tol)
    return frobenius_norm(Y) ** 2, lx, lz


def separability_floor_check(s, p, dA=2, dB=2, tol=DEFAULT_TOL):
    blk = block_decomposition(s, p, dA, dB)
    lhs, lx, lz = _floor_sides(blk.X, blk.Y, blk.Z, tol)
    rhs = lx * lz
    if lx >= -tol and lz >= -tol:
        trA = np.trace(blk.A).real
        chain = 2 * trA * (math.sqrt(max(lx, 0.0) * max(lz, 0.0)) - math.sqrt(lhs))
    else:
        chain = math.nan
    return FloorCheck(lhs, rhs, lhs <= rhs + tol, float(chain))
