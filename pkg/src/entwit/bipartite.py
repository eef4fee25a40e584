"""Bipartite density matrices and their index rearrangements.

Composite indices are A-major: basis ket ``|i>_A |k>_B`` sits at position
``i*dB + k``. Every rearrangement below is written in that convention.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, NotAState
from .linalg import DEFAULT_TOL, as_matrix, hermiticity_defect

TRACE_TOL = 1e-9


def _readonly(A):
    A = np.array(A, dtype=np.complex128)
    A.flags.writeable = False
    return A


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on ``C^dA ⊗ C^dB``.

    The constructor checks Hermiticity and unit trace to ``tol`` and
    positivity to ``-tol``. Use :meth:`unchecked` for operators that are
    not states, such as the image of a non-positive map.
    """

    rho: np.ndarray
    dA: int
    dB: int
    tol: float = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        rho = as_matrix(self.rho)
        dA, dB = int(self.dA), int(self.dB)
        if dA < 1 or dB < 1:
            raise DimensionMismatch(f"local dimensions must be positive, got ({dA}, {dB})")
        if rho.shape != (dA * dB, dA * dB):
            raise DimensionMismatch(
                f"matrix shape {rho.shape} does not match dims {dA}x{dB}"
            )
        object.__setattr__(self, "rho", _readonly(rho))
        object.__setattr__(self, "dA", dA)
        object.__setattr__(self, "dB", dB)
        if self.tol is not None:
            self._validate()

    def _validate(self):
        rho, tol = self.rho, self.tol
        bad = []
        herm = hermiticity_defect(rho)
        if herm > tol:
            bad.append("hermitian")
        tr = np.trace(rho)
        if abs(tr - 1) > TRACE_TOL:
            bad.append("unit_trace")
        if "hermitian" not in bad:
            lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
            if lam < -tol:
                bad.append("positive_semidefinite")
        if bad:
            raise NotAState(bad, f"hermiticity defect {herm:.2e}, trace {tr:.12g}")

    @classmethod
    def unchecked(cls, rho, dA, dB):
        """Wrap ``rho`` without the density-matrix checks (shape is still checked)."""
        return cls(rho, dA, dB, tol=None)

    @property
    def dim(self):
        return self.dA * self.dB


def _operand(x, dA=None, dB=None):
    if isinstance(x, BipartiteState):
        return x.rho, x.dA, x.dB
    if dA is None or dB is None:
        raise TypeError("dA and dB are required when passing a bare matrix")
    M = np.asarray(x)
    if M.shape != (dA * dB, dA * dB):
        raise DimensionMismatch(f"matrix shape {M.shape} does not match dims {dA}x{dB}")
    return M, dA, dB


def partial_transpose_B(x, dA=None, dB=None):
    """Transpose on subsystem B: ``out[(i,l),(j,k)] = rho[(i,k),(j,l)]``."""
    M, dA, dB = _operand(x, dA, dB)
    T = M.reshape(dA, dB, dA, dB)
    return T.transpose(0, 3, 2, 1).reshape(dA * dB, dA * dB)


def realign(x, dA=None, dB=None):
    """Realignment ``R[(k,l),(m,n)] = rho[(k,m),(l,n)]``.

    ``k, l`` index A and ``m, n`` index B, so the result is ``dA^2 x dB^2``.
    Any square matrix of composite size is accepted, not only states.
    Product operators map to rank one: ``(X⊗Y)^R = |X>><<Y*|`` with row
    vectorization.
    """
    M, dA, dB = _operand(x, dA, dB)
    T = M.reshape(dA, dB, dA, dB)
    return T.transpose(0, 2, 1, 3).reshape(dA * dA, dB * dB)


@dataclass(frozen=True)
class OperatorBasis:
    """Hilbert-Schmidt orthonormal basis of ``d x d`` matrices, ``elements[0] = I/sqrt(d)``."""

    d: int
    elements: np.ndarray  # shape (d*d, d, d)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, a):
        return self.elements[a]


@lru_cache(maxsize=None)
def gell_mann_basis(d):
    """Normalized generalized Gell-Mann basis.

    Ordering: identity, the ``d-1`` diagonal elements, the symmetric
    off-diagonal elements ``(e_jk + e_kj)/sqrt2`` and then the antisymmetric
    ones ``(-i e_jk + i e_kj)/sqrt2``, each with ``j < k`` in lexicographic
    order. For ``d = 2`` this is ``{I, sz, sx, sy}/sqrt2``.
    """
    d = int(d)
    if d < 2:
        raise ValueError("basis dimension must be at least 2")
    E = np.zeros((d * d, d, d), dtype=np.complex128)
    E[0] = np.eye(d) / np.sqrt(d)
    a = 1
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        E[a] = np.diag(diag) / np.sqrt(l * (l + 1))
        a += 1
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        E[a, j, k] = E[a, k, j] = 1 / np.sqrt(2)
        a += 1
    for j, k in pairs:
        E[a, j, k] = -1j / np.sqrt(2)
        E[a, k, j] = 1j / np.sqrt(2)
        a += 1
    E.flags.writeable = False
    return OperatorBasis(d, E)


def correlation_matrix(x, basisA=None, basisB=None, dA=None, dB=None, tol=DEFAULT_TOL):
    """``C[a, b] = Tr[rho (G_a ⊗ G_b)]``, canonical Gell-Mann bases by default.

    The result is returned as a real array when every imaginary part is
    below ``tol`` (the case for Hermitian ``rho``) and as complex otherwise.
    """
    M, dA, dB = _operand(x, dA, dB)
    basisA = gell_mann_basis(dA) if basisA is None else basisA
    basisB = gell_mann_basis(dB) if basisB is None else basisB
    if basisA.d != dA or basisB.d != dB:
        raise DimensionMismatch(
            f"basis dims ({basisA.d}, {basisB.d}) do not match state dims ({dA}, {dB})"
        )
    T = M.reshape(dA, dB, dA, dB)
    C = np.einsum("ikjl,aji,blk->ab", T, basisA.elements, basisB.elements)
    if np.max(np.abs(C.imag), initial=0.0) <= tol:
        return C.real.copy()
    return C
