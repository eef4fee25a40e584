"""The map ``Phi(A) = alpha*A^{T_B} + beta*A^R``, its Choi matrix and positivity.

Positivity is analysed one state at a time through the Weyl lower bound
``lambda_min(Phi(rho)) >= alpha*lambda_min(rho^{T_B}) + beta*lambda_min(rho^R)``;
nothing here claims positivity of the map on all of ``M_n``.
"""

import enum
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bipartite import _operand, partial_transpose_B, realign
from .errors import DimensionMismatch, RealignmentNotHermitian
from .linalg import DEFAULT_TOL, hermiticity_defect, hermitian_eigenvalues, is_hermitian

DEGENERATE_TOL = 1e-12
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class MapParams:
    alpha: float
    beta: float
    allow_zero: bool = False

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)) or a < 0 or b < 0:
            raise ValueError(f"alpha and beta must be finite and non-negative, got ({a}, {b})")
        if a == 0 and b == 0 and not self.allow_zero:
            raise ValueError("alpha = beta = 0 is the zero map; pass allow_zero=True")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def coerce(cls, p):
        if isinstance(p, cls):
            return p
        a, b = p
        return cls(a, b, allow_zero=True)


def _check_square_map(dA, dB):
    if dA != dB:
        raise DimensionMismatch(
            f"Phi needs dA == dB so that A^T_B ({dA*dB}x{dA*dB}) and A^R "
            f"({dA*dA}x{dB*dB}) have the same shape"
        )


def apply_map(M, p, dA=None, dB=None):
    """``alpha * M^{T_B} + beta * M^R`` for a square composite matrix or state."""
    p = MapParams.coerce(p)
    M, dA, dB = _operand(M, dA, dB)
    _check_square_map(dA, dB)
    return p.alpha * partial_transpose_B(M, dA, dB) + p.beta * realign(M, dA, dB)


class PositivityKind(enum.Enum):
    ALWAYS_POSITIVE = "AlwaysPositive"
    RATIO_LOWER_BOUND = "RatioLowerBound"
    RATIO_UPPER_BOUND = "RatioUpperBound"
    NEVER_POSITIVE = "NeverPositive"


@dataclass(frozen=True)
class PositivityVerdict:
    """Per-state case label for ``lambda_min(Phi(rho)) >= 0``.

    ``ratio_bound`` is non-negative. ``RATIO_LOWER_BOUND`` means
    ``alpha/beta >= ratio_bound`` guarantees a PSD image; ``RATIO_UPPER_BOUND``
    means ``alpha/beta <= ratio_bound`` does. ``degenerate`` marks the case
    where the denominator eigenvalue vanished and no finite ratio exists.
    """

    kind: PositivityKind
    ratio_bound: float | None
    lam_pt: float
    lam_r: float
    degenerate: bool = False

    def guarantees(self, p):
        """Whether the Weyl bound certifies ``Phi_p(rho) >= 0``."""
        p = MapParams.coerce(p)
        return p.alpha * self.lam_pt + p.beta * self.lam_r >= -DEFAULT_TOL


def positivity_verdict(s, tol=DEFAULT_TOL):
    """Classify a state by the signs of ``lambda_min`` of ``rho^{T_B}`` and ``rho^R``.

    Requires ``dA == dB`` and a Hermitian realigned matrix.
    """
    rho, dA, dB = _operand(s)
    _check_square_map(dA, dB)
    R = realign(rho, dA, dB)
    if hermiticity_defect(R) > tol:
        raise RealignmentNotHermitian(
            f"rho^R is not Hermitian (defect {hermiticity_defect(R):.2e})"
        )
    lam_pt = float(hermitian_eigenvalues(partial_transpose_B(rho, dA, dB), tol)[0])
    lam_r = float(hermitian_eigenvalues(R, tol)[0])
    pt_ok = lam_pt >= -tol
    r_ok = lam_r >= -tol
    K = PositivityKind
    if pt_ok and r_ok:
        return PositivityVerdict(K.ALWAYS_POSITIVE, None, lam_pt, lam_r)
    if pt_ok:
        if lam_pt < DEGENERATE_TOL:
            return PositivityVerdict(K.NEVER_POSITIVE, None, lam_pt, lam_r, degenerate=True)
        return PositivityVerdict(K.RATIO_LOWER_BOUND, abs(lam_r) / lam_pt, lam_pt, lam_r)
    if r_ok:
        return PositivityVerdict(K.RATIO_UPPER_BOUND, max(lam_r, 0.0) / abs(lam_pt), lam_pt, lam_r)
    return PositivityVerdict(K.NEVER_POSITIVE, None, lam_pt, lam_r)


@dataclass(frozen=True)
class DomainScan:
    n: int
    counts: dict
    sup_lower_bound: float | None
    inf_upper_bound: float | None
    skipped: int


def domain_scan(sampler, n, workers=None, tol=DEFAULT_TOL):
    """Aggregate :func:`positivity_verdict` over ``n`` states from ``sampler()``.

    States are drawn serially (so seeded samplers stay reproducible) and
    classified in a thread pool when ``workers > 1``. States whose
    realignment is not Hermitian fall outside the domain and are counted
    as ``skipped``.
    """
    states = [sampler() for _ in range(n)]

    def classify(s):
        try:
            return positivity_verdict(s, tol)
        except RealignmentNotHermitian:
            return None

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            verdicts = list(ex.map(classify, states))
    else:
        verdicts = [classify(s) for s in states]
    counts = {k: 0 for k in PositivityKind}
    lower, upper, skipped = [], [], 0
    for v in verdicts:
        if v is None:
            skipped += 1
            continue
        counts[v.kind] += 1
        if v.kind is PositivityKind.RATIO_LOWER_BOUND:
            lower.append(v.ratio_bound)
        elif v.kind is PositivityKind.RATIO_UPPER_BOUND:
            upper.append(v.ratio_bound)
    return DomainScan(
        n, counts, max(lower) if lower else None, min(upper) if upper else None, skipped
    )


def choi_matrix(p, dA=2, dB=2):
    """``C = sum_ij e_ij ⊗ Phi(e_ij)`` over the matrix units of ``M_{dA*dB}``.

    Block ``(i, j)`` of size ``dA*dB`` is ``Phi(e_ij)``. The matrix is real
    and, for ``beta > 0``, not Hermitian.
    """
    p = MapParams.coerce(p)
    _check_square_map(dA, dB)
    n = dA * dB
    C = np.zeros((n * n, n * n), dtype=np.complex128)
    E = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            E[i, j] = 1
            C[i * n:(i + 1) * n, j * n:(j + 1) * n] = apply_map(E, p, dA, dB)
            E[i, j] = 0
    return C


def general_eigenvalues(C):
    """Eigenvalues of a square matrix with its exact null directions deflated.

    With ``C = U_r S_r V_r^dagger`` (numerical rank ``r``), the nonzero
    eigenvalues of ``C`` are those of the ``r x r`` matrix
    ``S_r V_r^dagger U_r``; the other ``n - r`` are zero. Repeating this
    until the compressed matrix has full rank removes Jordan blocks at
    zero, which plain ``eigvals`` would split into pairs of size
    ``~sqrt(eps)``.
    """
    C = np.asarray(C)
    zeros = 0
    while C.shape[0]:
        U, sv, Vh = np.linalg.svd(C)
        r = int(np.sum(sv > sv[0] * C.shape[0] * np.finfo(float).eps)) if sv[0] > 0 else 0
        if r == C.shape[0]:
            break
        zeros += C.shape[0] - r
        C = (sv[:r, None] * Vh[:r]) @ U[:, :r]
    return np.concatenate([np.linalg.eigvals(C), np.zeros(zeros, dtype=complex)])


def _sorted_spectrum(ev):
    big = np.abs(ev.imag) > IMAG_TOL
    if np.any(big):
        warnings.warn(
            f"{int(big.sum())} eigenvalue(s) have |Im| > {IMAG_TOL:g}; reported as complex",
            RuntimeWarning,
            stacklevel=3,
        )
        return ev[np.lexsort((ev.imag, ev.real))]
    return np.sort(ev.real)


def choi_spectrum(p, dA=2, dB=2):
    """General (non-Hermitian) eigenvalues of the Choi matrix, ascending.

    Computed with :func:`general_eigenvalues`. Eigenvalues with imaginary
    part below ``1e-9`` are returned as reals; otherwise a complex array is
    returned and a ``RuntimeWarning`` is issued.
    """
    return _sorted_spectrum(general_eigenvalues(choi_matrix(p, dA, dB)))


def choi_spectrum_symmetrized(p, dA=2, dB=2):
    """Spectrum of the Hermitian part ``(C + C^dagger)/2``."""
    C = choi_matrix(p, dA, dB)
    return np.linalg.eigvalsh((C + C.conj().T) / 2)


def is_completely_positive(p, dA=2, dB=2, tol=DEFAULT_TOL, strict=False):
    """Complete-positivity verdict from the Choi matrix.

    By default the Choi matrix is judged by its general spectrum: CP iff
    every eigenvalue is real and ``>= -tol``. This gives CP exactly when
    ``alpha == 0``.

    With ``strict=True`` the Choi matrix must also be Hermitian within
    ``tol`` (the textbook criterion). The realignment part has a
    non-Hermitian Choi matrix, so under ``strict`` no map with
    ``beta > 0`` qualifies.
    """
    C = choi_matrix(p, dA, dB)
    if strict:
        if not is_hermitian(C, tol):
            return False
        return float(hermitian_eigenvalues(C, tol)[0]) >= -tol
    ev = general_eigenvalues(C)
    if np.any(np.abs(ev.imag) > IMAG_TOL):
        return False
    return float(ev.real.min()) >= -tol
