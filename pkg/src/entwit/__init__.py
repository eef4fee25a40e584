"""Entanglement witnesses from the partial-transpose plus realignment map.

Quick tour::

    >>> from entwit import statezoo, criteria, witness
    >>> rho = statezoo.bes_4x4()
    >>> round(criteria.ccnr(rho).value, 5)
    1.08579
    >>> w = witness.witness_for_state(rho, (1, 1))
    >>> round(witness.witness_value(rho, w), 4)
    -5.3553
"""

from .bipartite import BipartiteState, OperatorBasis, correlation_matrix, gell_mann_basis, partial_transpose_B, realign
from .criteria import CriterionResult, block_separability_sufficient, ccnr, ct_scan, ct_value, dv, ppt
from .errors import *  # noqa: F401,F403
from .posmap import (
    MapParams, PositivityKind, PositivityVerdict, apply_map, choi_matrix, choi_spectrum,
    choi_spectrum_symmetrized, domain_scan, general_eigenvalues, is_completely_positive, positivity_verdict,
)
from .witness import (
    WitnessOperator, build_O, build_witness, gamma_for_state, reference_gamma,
    separability_floor_check, witness_for_state, witness_value,
)

__version__ = "0.1.0"
