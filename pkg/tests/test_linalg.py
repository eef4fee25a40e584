import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from entwit import linalg as la
from entwit.errors import NotHermitian
from entwit.posmap import choi_matrix
from entwit.rand import ginibre, rand_hermitian, rand_psd, rand_unitary
from entwit.statezoo import bell_diagonal

SX = np.array([[0, 1], [1, 0]])
SZ = np.diag([1, -1])


def unit(n, i, j):
    E = np.zeros((n, n))
    E[i, j] = 1
    return E


def test_dagger_identity_and_units():
    assert np.array_equal(la.dagger(np.eye(4)), np.eye(4))
    assert np.array_equal(la.dagger(unit(3, 0, 1)), unit(3, 1, 0))


def test_dagger_entrywise(rng):
    M = ginibre(3, 5, rng)
    D = la.dagger(M)
    assert D.shape == (5, 3)
    for i in range(3):
        for j in range(5):
            assert D[j, i] == np.conj(M[i, j])
    assert np.array_equal(la.dagger(D), M)


def test_kron_examples():
    assert np.array_equal(la.kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(la.kron(SZ, SZ), np.diag([1, -1, -1, 1]))
    assert la.kron(np.ones((2, 3)), np.ones((4, 5))).shape == (8, 15)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_kron_block_convention(rA, cA, rB, cB, seed):
    rng = np.random.default_rng(seed)
    A, B = ginibre(rA, cA, rng), ginibre(rB, cB, rng)
    K = la.kron(A, B)
    for i in range(rA):
        for j in range(cA):
            for k in range(rB):
                for l in range(cB):
                    assert abs(K[i * rB + k, j * cB + l] - A[i, j] * B[k, l]) <= 1e-14 * (1 + abs(A[i, j] * B[k, l]))


def test_hermitian_eigenvalues_sorted():
    assert np.allclose(la.hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


def test_hermitian_eigenvalues_charpoly_oracle(rng):
    for _ in range(5):
        H = rand_hermitian(3, rng)
        x = sympy.symbols("x")
        Hs = sympy.Matrix(3, 3, lambda i, j: sympy.nsimplify(H[i, j].real) + sympy.I * sympy.nsimplify(H[i, j].imag))
        poly = sympy.Poly((Hs - x * sympy.eye(3)).det(), x)
        roots = sorted(complex(r).real for r in sympy.Poly(poly, x).nroots(n=30))
        assert np.allclose(la.hermitian_eigenvalues(H), roots, atol=1e-10)


def test_bell_diagonal_pt_spectrum():
    t = 0.4
    ev = la.hermitian_eigenvalues(bell_diagonal(0, 0, -t).rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4))
    assert np.allclose(ev, sorted([(1 - t) / 4] * 2 + [(1 + t) / 4] * 2), atol=1e-12)


def test_not_hermitian_raises():
    with pytest.raises(NotHermitian):
        la.hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitian):
        la.is_psd(np.array([[1, 2], [0, 1]]))


def test_tiny_antihermitian_part_is_symmetrized():
    H = np.diag([1.0, 2.0]).astype(complex)
    H[0, 1] = 1e-12j
    assert np.allclose(la.hermitian_eigenvalues(H), [1, 2])


def test_min_eigenvalue_examples():
    assert la.min_eigenvalue(SX) == pytest.approx(-1)
    singlet = bell_diagonal(-1, -1, -1)
    pt = singlet.rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    assert la.min_eigenvalue(pt) == pytest.approx(-0.5)


def test_singular_values_examples(rng):
    assert np.allclose(la.singular_values(np.eye(4)), np.ones(4))
    u, v = ginibre(4, 1, rng)[:, 0], ginibre(3, 1, rng)[:, 0]
    sv = la.singular_values(np.outer(u, v.conj()))
    assert sv[0] == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v))
    assert np.allclose(sv[1:], 0, atol=1e-12)
    assert len(la.singular_values(ginibre(2, 5, rng))) == 2


def test_singular_values_against_gram_spectrum(rng):
    for _ in range(20):
        M = ginibre(4, rng=rng)
        sq = np.sort(la.singular_values(M) ** 2)
        assert np.allclose(sq, la.hermitian_eigenvalues(M @ M.conj().T), atol=1e-9)


def test_trace_norm(rng):
    assert la.trace_norm(np.eye(4)) == pytest.approx(4)
    for _ in range(10):
        M = ginibre(3, 5, rng)
        oracle = np.sum(np.sqrt(np.clip(np.linalg.eigvalsh(M @ M.conj().T), 0, None)))
        assert la.trace_norm(M) == pytest.approx(oracle, rel=1e-10)


def test_frobenius_norm(rng):
    assert la.frobenius_norm(np.zeros((3, 3))) == 0
    assert la.frobenius_norm(unit(2, 0, 1)) == 1
    M = ginibre(4, 2, rng)
    assert la.frobenius_norm(M) == pytest.approx(np.sqrt(sum(abs(z) ** 2 for z in M.flat)))


def test_is_psd():
    assert la.is_psd(np.eye(3))
    assert not la.is_psd(SX)
    # the partial-transpose Choi matrix is Hermitian with eigenvalue -2
    assert not la.is_psd(choi_matrix((1, 0)))


def test_non_hermitian_choi_is_rejected_by_is_psd():
    for p in [(0, 1), (1, 1)]:
        with pytest.raises(NotHermitian):
            la.is_psd(choi_matrix(p))


def test_weyl_inequality(rng):
    for _ in range(200):
        n = int(rng.integers(2, 9))
        X, Y = rand_hermitian(n, rng), rand_hermitian(n, rng)
        assert la.min_eigenvalue(X) + la.min_eigenvalue(Y) <= la.min_eigenvalue(X + Y) + 1e-9


def test_trace_bounds(rng):
    for _ in range(200):
        n = int(rng.integers(2, 9))
        A, B = rand_hermitian(n, rng), rand_psd(n, rng)
        tAB = np.trace(A @ B).real
        trB = np.trace(B).real
        assert la.min_eigenvalue(A) * trB <= tAB + 1e-9
        assert tAB <= la.max_eigenvalue(A) * trB + 1e-9


def test_trace_norm_unitary_invariance(rng):
    for _ in range(50):
        M = ginibre(5, rng=rng)
        U, V = rand_unitary(5, rng), rand_unitary(5, rng)
        assert abs(la.trace_norm(U @ M @ V) - la.trace_norm(M)) < 1e-8


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        la.as_matrix([[1, np.nan]])
