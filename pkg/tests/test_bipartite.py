import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entwit.bipartite import (
    BipartiteState, correlation_matrix, gell_mann_basis, partial_transpose_B, realign,
)
from entwit.errors import DimensionMismatch, NotAState
from entwit.linalg import trace_norm
from entwit.rand import ginibre, rand_density_matrix
from entwit.statezoo import bell_diagonal

DIMS = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 4)]


def pt_oracle(M, dA, dB):
    out = np.empty_like(M)
    for i in range(dA):
        for j in range(dA):
            for k in range(dB):
                for l in range(dB):
                    out[i * dB + l, j * dB + k] = M[i * dB + k, j * dB + l]
    return out


def realign_oracle(M, dA, dB):
    out = np.empty((dA * dA, dB * dB), dtype=M.dtype)
    for k in range(dA):
        for l in range(dA):
            for m in range(dB):
                for n in range(dB):
                    out[k * dA + l, m * dB + n] = M[k * dB + m, l * dB + n]
    return out


@pytest.mark.parametrize("dA,dB", DIMS)
def test_rearrangements_match_index_oracles(dA, dB, rng):
    M = ginibre(dA * dB, rng=rng)
    assert np.array_equal(partial_transpose_B(M, dA, dB), pt_oracle(M, dA, dB))
    assert np.array_equal(realign(M, dA, dB), realign_oracle(M, dA, dB))


def test_partial_transpose_product_law(rng):
    X, Y = ginibre(2, rng=rng), ginibre(3, rng=rng)
    assert np.allclose(partial_transpose_B(np.kron(X, Y), 2, 3), np.kron(X, Y.T))


@given(st.sampled_from(DIMS), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_partial_transpose_involution_preserves_trace(dims, seed):
    dA, dB = dims
    M = ginibre(dA * dB, rng=np.random.default_rng(seed))
    T = partial_transpose_B(M, dA, dB)
    assert np.array_equal(partial_transpose_B(T, dA, dB), M)
    assert np.isclose(np.trace(T), np.trace(M))
    H = M + M.conj().T
    TH = partial_transpose_B(H, dA, dB)
    assert np.allclose(TH, TH.conj().T)


def test_bell_diagonal_pt_display():
    t1, t2, t3 = 0.3, -0.1, 0.2
    T = partial_transpose_B(bell_diagonal(t1, t2, t3)) * 4
    expected = np.array([
        [1 + t3, 0, 0, t1 + t2],
        [0, 1 - t3, t1 - t2, 0],
        [0, t1 - t2, 1 - t3, 0],
        [t1 + t2, 0, 0, 1 + t3],
    ])
    assert np.allclose(T, expected, atol=1e-15)


def test_bell_diagonal_realign_display():
    t1, t2, t3 = 0.3, -0.1, 0.2
    R = realign(bell_diagonal(t1, t2, t3)) * 4
    expected = np.array([
        [1 + t3, 0, 0, 1 - t3],
        [0, t1 - t2, t1 + t2, 0],
        [0, t1 + t2, t1 - t2, 0],
        [1 - t3, 0, 0, 1 + t3],
    ])
    assert np.allclose(R, expected, atol=1e-15)


@pytest.mark.parametrize("dA,dB", DIMS)
def test_realign_product_is_rank_one(dA, dB, rng):
    X, Y = ginibre(dA, rng=rng), ginibre(dB, rng=rng)
    R = realign(np.kron(X, Y), dA, dB)
    # (X⊗Y)^R = |vec X><vec Y*| with row vectorization
    assert np.allclose(R, np.outer(X.reshape(-1), Y.reshape(-1)), atol=1e-12)
    assert np.linalg.matrix_rank(R, tol=1e-9) <= 1


def test_realign_maximally_mixed_norm():
    assert trace_norm(realign(np.eye(4) / 4, 2, 2)) == pytest.approx(0.5)


def test_realign_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        realign(np.eye(5), 2, 2)


def test_gell_mann_qubit_is_pauli():
    G = gell_mann_basis(2).elements * np.sqrt(2)
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1, -1])
    for got, want in zip(G, [np.eye(2), sz, sx, sy]):
        assert np.allclose(got, want)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gell_mann_orthonormal_and_traceless(d):
    B = gell_mann_basis(d)
    assert len(B) == d * d
    gram = np.einsum("aij,bij->ab", B.elements.conj(), B.elements)
    assert np.allclose(gram, np.eye(d * d), atol=1e-12)
    assert np.array_equal(B[0], np.eye(d) / np.sqrt(d))
    assert np.allclose([np.trace(g) for g in B.elements[1:]], 0, atol=1e-12)
    assert all(np.allclose(g, g.conj().T) for g in B.elements)


def test_correlation_matrix_maximally_mixed():
    C = correlation_matrix(BipartiteState(np.eye(12) / 12, 3, 4))
    assert C[0, 0] == pytest.approx(1 / np.sqrt(12))
    C[0, 0] = 0
    assert np.allclose(C, 0, atol=1e-15)


def test_correlation_matrix_bell_diagonal():
    t1, t2, t3 = 0.2, -0.3, 0.4
    C = correlation_matrix(bell_diagonal(t1, t2, t3))
    # basis order is I, sz, sx, sy
    assert np.allclose(C, np.diag([0.5, t3 / 2, t1 / 2, t2 / 2]), atol=1e-15)


def test_correlation_matrix_direct_trace_oracle(rng):
    s = rand_density_matrix(2, 3, rng)
    GA, GB = gell_mann_basis(2), gell_mann_basis(3)
    C = correlation_matrix(s)
    for a in range(4):
        for b in range(9):
            assert C[a, b] == pytest.approx(np.trace(s.rho @ np.kron(GA[a], GB[b])).real, abs=1e-14)


@pytest.mark.parametrize("dA,dB", [(2, 2), (2, 3), (3, 3), (4, 4)])
def test_correlation_norm_equals_realigned_norm(dA, dB, rng):
    for _ in range(100):
        s = rand_density_matrix(dA, dB, rng)
        C = correlation_matrix(s)
        assert abs(trace_norm(C) - trace_norm(realign(s))) < 1e-8
        assert C[0, 0] == pytest.approx(1 / np.sqrt(dA * dB), abs=1e-12)


def test_correlation_matrix_basis_mismatch():
    with pytest.raises(DimensionMismatch):
        correlation_matrix(BipartiteState(np.eye(4) / 4, 2, 2), gell_mann_basis(3), gell_mann_basis(2))


def test_state_validation_lists_all_violations():
    with pytest.raises(NotAState) as exc:
        BipartiteState(np.diag([2.0, -1.0, 0.5, 0.0]), 2, 2)
    assert exc.value.violations == ["unit_trace", "positive_semidefinite"]
    with pytest.raises(NotAState) as exc:
        BipartiteState(np.array([[0.5, 1], [0, 0.5]]), 1, 2)
    assert exc.value.violations == ["hermitian"]


def test_unchecked_and_immutability():
    s = BipartiteState.unchecked(np.diag([1.0, -1.0, 0, 0]), 2, 2)
    with pytest.raises(ValueError):
        s.rho[0, 0] = 3
    with pytest.raises(DimensionMismatch):
        BipartiteState.unchecked(np.eye(3), 2, 2)
