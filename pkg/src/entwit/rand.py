"""Seeded random matrices and states for tests, scans and benchmarks."""

import numpy as np

from .bipartite import BipartiteState


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def ginibre(rows, cols=None, rng=None):
    rng = _rng(rng)
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def rand_hermitian(d, rng=None):
    G = ginibre(d, rng=rng)
    return (G + G.conj().T) / 2


def rand_psd(d, rng=None, rank=None):
    G = ginibre(d, d if rank is None else rank, rng=rng)
    return G @ G.conj().T


def rand_unitary(d, rng=None):
    """Haar-random unitary via QR with the phase fix of Mezzadri."""
    Q, R = np.linalg.qr(ginibre(d, rng=rng))
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def haar_ket(d, rng=None):
    v = ginibre(d, 1, rng=rng)[:, 0]
    return v / np.linalg.norm(v)


def rand_density_matrix(dA, dB, rng=None, rank=None):
    """Hilbert-Schmidt (``rank=None``) or induced-measure random state."""
    P = rand_psd(dA * dB, rng=rng, rank=rank)
    return BipartiteState(P / np.trace(P).real, dA, dB)


def rand_product_state(dA, dB, rng=None):
    rng = _rng(rng)
    v = np.kron(haar_ket(dA, rng), haar_ket(dB, rng))
    return BipartiteState(np.outer(v, v.conj()), dA, dB)


def rand_separable_state(dA, dB, terms, rng=None):
    """Convex mixture of ``terms`` Haar product states with Dirichlet weights."""
    rng = _rng(rng)
    w = rng.dirichlet(np.ones(terms))
    rho = sum(wi * rand_product_state(dA, dB, rng).rho for wi in w)
    return BipartiteState(rho, dA, dB)
