"""Dense complex matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128`` (or
anything convertible to it). All routines are pure and deterministic; the
heavy lifting is delegated to LAPACK through :mod:`numpy.linalg`.
"""

import numpy as np

from .errors import DimensionMismatch, NotHermitian

DEFAULT_TOL = 1e-9


def as_matrix(M):
    """Return ``M`` as a finite 2-D complex array (a fresh copy)."""
    A = np.array(M, dtype=np.complex128)
    if A.ndim != 2 or 0 in A.shape:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def dagger(M):
    return np.conj(np.asarray(M)).T


def kron(A, B):
    """Kronecker product, ``(A⊗B)[i*rB+k, j*cB+l] = A[i,j]*B[k,l]``."""
    return np.kron(np.asarray(A), np.asarray(B))


def hermiticity_defect(M):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    return float(np.max(np.abs(M - dagger(M)), initial=0.0))


def is_hermitian(M, tol=DEFAULT_TOL):
    return hermiticity_defect(M) <= tol


def _symmetrized(M, tol):
    defect = hermiticity_defect(M)
    if defect > tol:
        raise NotHermitian(f"max |M - M^dagger| = {defect:.3e} exceeds tol {tol:g}")
    M = np.asarray(M)
    return (M + dagger(M)) / 2


def hermitian_eigenvalues(M, tol=DEFAULT_TOL):
    """Ascending real eigenvalues of a Hermitian matrix.

    ``M`` is symmetrized as ``(M + M^dagger)/2`` before the solve so that
    roundoff-level anti-Hermitian parts do not leak into the spectrum.

    Raises
    ------
    NotHermitian
        If any entry of ``M - M^dagger`` exceeds ``tol`` in modulus.
    """
    return np.linalg.eigvalsh(_symmetrized(M, tol))


def min_eigenvalue(M, tol=DEFAULT_TOL):
    return float(hermitian_eigenvalues(M, tol)[0])


def max_eigenvalue(M, tol=DEFAULT_TOL):
    return float(hermitian_eigenvalues(M, tol)[-1])


def singular_values(M):
    """Singular values in descending order (``min(rows, cols)`` of them)."""
    return np.linalg.svd(np.asarray(M), compute_uv=False)


def trace_norm(M):
    return float(np.sum(singular_values(M)))


def frobenius_norm(M):
    return float(np.linalg.norm(np.asarray(M), "fro"))


def is_psd(M, tol=DEFAULT_TOL):
    """True iff the Hermitian matrix ``M`` has ``lambda_min >= -tol``."""
    return min_eigenvalue(M, tol) >= -tol
