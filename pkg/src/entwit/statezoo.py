"""Parametric state families: Bell-diagonal two-qubit states and three ``4⊗4`` PPT families."""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .bipartite import BipartiteState
from .errors import BadNormalization, BadParameter, NotAState, UnknownFamily

SQRT2 = math.sqrt(2.0)
Q1 = (SQRT2 - 1) / 2
P1 = (2 - SQRT2) / 4
KYE_PSD_ARG = math.pi / 8

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def bell_diagonal(t1, t2, t3, tol=1e-12):
    """``(I⊗I + sum_j t_j sigma_j⊗sigma_j) / 4``.

    Raises :class:`NotAState` unless ``(1-t3)^2 >= (t1+t2)^2`` and
    ``(1+t3)^2 >= (t1-t2)^2``.
    """
    t1, t2, t3 = float(t1), float(t2), float(t3)
    bad = []
    if (1 - t3) ** 2 < (t1 + t2) ** 2 - tol or 1 - t3 < -tol:
        bad.append("(1-t3)^2 >= (t1+t2)^2")
    if (1 + t3) ** 2 < (t1 - t2) ** 2 - tol or 1 + t3 < -tol:
        bad.append("(1+t3)^2 >= (t1-t2)^2")
    if bad:
        raise NotAState(["positive_semidefinite"], "violates " + " and ".join(bad))
    rho = np.eye(4, dtype=complex)
    for t, s in zip((t1, t2, t3), _PAULI):
        rho = rho + t * np.kron(s, s)
    return BipartiteState(rho / 4, 2, 2)


def _ket(d, *terms):
    v = np.zeros(d * d)
    for coeff, (i, k) in terms:
        v[i * d + k] += coeff
    return v


def omega_vectors():
    """The six orthonormal vectors spanning ``bes_4x4``, as rows."""
    s, h = 1 / SQRT2, 0.5
    return np.array([
        _ket(4, (s, (0, 1)), (s, (2, 3))),
        _ket(4, (s, (1, 0)), (s, (3, 2))),
        _ket(4, (s, (1, 1)), (s, (2, 2))),
        _ket(4, (s, (0, 0)), (-s, (3, 3))),
        _ket(4, (h, (0, 3)), (h, (1, 2)), (s, (2, 1))),
        _ket(4, (-h, (0, 3)), (h, (1, 2)), (s, (3, 0))),
    ])


def bes_4x4(p=P1, q=Q1):
    """``p * sum_{i<=4} |w_i><w_i| + q * sum_{i=5,6} |w_i><w_i|`` with ``4p + 2q = 1``.

    PPT (indeed invariant under partial transposition) when ``p = q/sqrt2``,
    i.e. at ``(P1, Q1)``.
    """
    p, q = float(p), float(q)
    bad = [f"{n} = {v} must be non-negative" for n, v in (("p", p), ("q", q)) if v < 0]
    if bad:
        raise BadParameter(bad)
    if abs(4 * p + 2 * q - 1) > 1e-9:
        raise BadNormalization(f"4p + 2q = {4 * p + 2 * q!r}, expected 1")
    W = omega_vectors()
    weights = np.array([p] * 4 + [q] * 2)
    rho = (W.T * weights) @ W
    return BipartiteState(rho, 4, 4)


def kye_params_problems(z, p, r):
    problems = []
    if abs(abs(z) - 1) > 1e-9:
        problems.append(f"|z| = {abs(z):.12g}, must be 1")
    arg = cmath.phase(z)
    if not -math.pi / 4 < arg < math.pi / 4:
        problems.append(f"Arg(z) = {arg:.6g}, must lie in (-pi/4, pi/4)")
    elif abs(arg) > KYE_PSD_ARG + 1e-12:
        # The blocks couple entries 0, 5, 10, 15 in a cycle of flux pi + 4 Arg(z);
        # the assembled matrix has lambda_min < 0 once |Arg z| exceeds pi/8.
        problems.append(f"Arg(z) = {arg:.6g}: the assembled matrix is PSD only for |Arg z| <= pi/8")
    if not p > 0:
        problems.append(f"p = {p}, must be positive")
    if not 0 < r < 1:
        problems.append(f"r = {r}, must lie in (0, 1)")
    return problems


def kye_state(z=1.0, p=1.0, r=0.5):
    """``4⊗4`` PPT entangled family assembled from 4x4 blocks and normalized by its trace.

    Lower-triangle blocks are the conjugate transposes of the upper ones.
    """
    z, p, r = complex(z), float(p), float(r)
    problems = kye_params_problems(z, p, r)
    if problems:
        raise BadParameter(problems)
    zb = z.conjugate()
    s = z + zb
    O = np.zeros((4, 4), dtype=complex)

    def units(**entries):
        M = O.copy()
        for key, val in entries.items():
            M[int(key[1]), int(key[2])] = val
        return M

    A11 = np.diag([s, 1 / p, p, r / p + r])
    A22 = np.diag([p, s, r / p + r, 1 / p])
    A33 = np.diag([1 / p, r * p + r, s, p])
    A44 = np.diag([r * p + r, p, 1 / p, s])
    A12 = units(e01=-z, e23=-r)
    A13 = units(e02=-zb, e13=-r * z)
    A24 = units(e02=-r * z, e13=z)
    A34 = units(e01=-r, e23=-zb)
    H = lambda M: M.conj().T  # noqa: E731
    M = np.block([
        [A11, A12, A13, O],
        [H(A12), A22, O, A24],
        [H(A13), O, A33, A34],
        [O, H(A24), H(A34), A44],
    ])
    return BipartiteState(M / np.trace(M).real, 4, 4)


def noisy_bes(lam):
    """``lam * bes_4x4(P1, Q1) + (1 - lam) * I/16``."""
    lam = float(lam)
    if not 0 <= lam <= 1:
        raise BadParameter(f"lambda = {lam}, must lie in [0, 1]")
    rho = lam * bes_4x4().rho + (1 - lam) / 16 * np.eye(16)
    return BipartiteState(rho, 4, 4)


@dataclass(frozen=True)
class _Family:
    build: object
    params: tuple
    defaults: dict
    complex_params: tuple = ()


FAMILIES = {
    "bell_diagonal": _Family(bell_diagonal, ("t1", "t2", "t3"), {"t1": 0.0, "t2": 0.0, "t3": 0.0}),
    "bes_4x4": _Family(bes_4x4, ("p", "q"), {"p": P1, "q": Q1}),
    "kye": _Family(kye_state, ("z", "p", "r"), {"z": 1.0, "p": 1.0}, complex_params=("z",)),
    "noisy_bes": _Family(lambda **kw: noisy_bes(kw["lambda"]), ("lambda",), {}),
}


def family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None


@dataclass(frozen=True)
class FamilySpec:
    """A named family with fixed parameter values and optional scan ranges.

    ``ranges`` maps a parameter name to ``(start, stop, step)``.
    """

    name: str
    parameters: dict = field(default_factory=dict)
    ranges: dict = field(default_factory=dict)

    def __post_init__(self):
        fam = family(self.name)
        names = set(self.parameters) | set(self.ranges)
        extra = names - set(fam.params)
        if extra:
            raise BadParameter(
                f"family {self.name!r} takes {', '.join(fam.params)}; got unexpected {', '.join(sorted(extra))}"
            )
        missing = set(fam.params) - names - set(fam.defaults)
        if missing:
            raise BadParameter(f"family {self.name!r} needs {', '.join(sorted(missing))}")

    def build(self, **overrides):
        fam = family(self.name)
        kw = {**fam.defaults, **self.parameters, **overrides}
        if self.name == "noisy_bes":
            return fam.build(**kw)
        return fam.build(*(kw[n] for n in fam.params))


def make_state(name, **params):
    return FamilySpec(name, params).build()
