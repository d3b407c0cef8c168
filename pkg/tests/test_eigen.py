"""Eigensolver checks against the independent LAPACK oracle (np.linalg.eigh)."""

import numpy as np
import pytest

from lrdpg.eigen import bottom_eigenpairs_skip, eigh_full, top_eigenpairs


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return a + a.T


def test_top_single_offdiagonal_pair():
    m = np.array([[0.0, 1.0], [1.0, 0.0]])
    es = top_eigenpairs(m, 1)
    assert es.values[0] == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(es.vectors[:, 0], [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-12)


def test_top_diagonal_matrix_exact_basis():
    es = top_eigenpairs(np.diag([3.0, 2.0, 1.0]), 2)
    assert np.allclose(es.values, [3.0, 2.0], atol=1e-14)
    assert np.allclose(es.vectors[:, 0], [1, 0, 0], atol=1e-12)
    assert np.allclose(es.vectors[:, 1], [0, 1, 0], atol=1e-12)


def test_residuals_and_orthonormality_random():
    rng = np.random.default_rng(42)
    for _ in range(30):
        n = int(rng.integers(2, 30))
        m = random_symmetric(rng, n)
        d = int(rng.integers(1, n + 1))
        es = top_eigenpairs(m, d)
        fro = np.linalg.norm(m)
        res = np.linalg.norm(m @ es.vectors - es.vectors * es.values, axis=0)
        assert res.max() <= 1e-8 * fro
        gram = es.vectors.T @ es.vectors - np.eye(d)
        assert np.abs(gram).max() <= 1e-8


def test_values_match_lapack_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 25))
        m = random_symmetric(rng, n)
        d = int(rng.integers(1, n + 1))
        es = top_eigenpairs(m, d)
        ref = np.linalg.eigh(m)[0][::-1][:d]
        assert np.allclose(es.values, ref, atol=1e-10 * max(1, np.linalg.norm(m)))


def test_bottom_skip_diagonal():
    es = bottom_eigenpairs_skip(np.diag([1.0, 2.0, 3.0]), 1, 1)
    assert es.values[0] == pytest.approx(2.0, abs=1e-14)


def test_bottom_skip_matches_full_decomposition():
    rng = np.random.default_rng(3)
    m = random_symmetric(rng, 8)
    ref = np.sort(np.linalg.eigh(m)[0])
    es = bottom_eigenpairs_skip(m, 3, 2)
    assert np.allclose(np.sort(es.values), ref[2:5], atol=1e-10)
    res = np.linalg.norm(m @ es.vectors - es.vectors * es.values, axis=0)
    assert res.max() <= 1e-8 * np.linalg.norm(m)


def test_reconstruction_full_rank():
    rng = np.random.default_rng(11)
    m = random_symmetric(rng, 10)
    es = eigh_full(m)
    rec = (es.vectors * es.values) @ es.vectors.T
    assert np.linalg.norm(rec - m) <= 1e-8 * np.linalg.norm(m)


def test_deterministic_bitwise():
    rng = np.random.default_rng(5)
    m = random_symmetric(rng, 17)
    a = top_eigenpairs(m, 4)
    b = top_eigenpairs(m, 4)
    assert (a.values == b.values).all()
    assert (a.vectors == b.vectors).all()


def test_sign_convention_largest_entry_positive():
    rng = np.random.default_rng(9)
    for _ in range(10):
        m = random_symmetric(rng, 12)
        es = top_eigenpairs(m, 5)
        for j in range(5):
            col = es.vectors[:, j]
            assert col[np.argmax(np.abs(col))] > 0


def test_degenerate_tie_subspace():
    # multiplicity-2 top eigenvalue: accept any orthonormal basis of the tie space
    A = np.zeros((6, 6))
    for i, j in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
        A[i, j] = A[j, i] = 1
    es = top_eigenpairs(A, 2)
    assert np.allclose(es.values, [2.0, 2.0], atol=1e-10)
    # true eigenspace is spanned by the per-component Perron vectors
    b1 = np.array([1, 1, 1, 0, 0, 0]) / np.sqrt(3)
    b2 = np.array([0, 0, 0, 1, 1, 1]) / np.sqrt(3)
    basis = np.column_stack([b1, b2])
    proj = basis @ (basis.T @ es.vectors)
    assert np.abs(proj - es.vectors).max() < 1e-8


def test_clustered_eigenvalues_stay_orthonormal():
    rng = np.random.default_rng(13)
    for width in [1e-14, 1e-9, 1e-6]:
        base = np.diag([1.0, 1.0 + width, 1.0 + 2 * width, 4.0, 9.0])
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        m = q @ base @ q.T
        m = 0.5 * (m + m.T)
        es = eigh_full(m)
        gram = es.vectors.T @ es.vectors - np.eye(5)
        assert np.abs(gram).max() <= 1e-8
        res = np.linalg.norm(m @ es.vectors - es.vectors * es.values, axis=0)
        assert res.max() <= 1e-8 * np.linalg.norm(m)


def test_zero_matrix():
    es = top_eigenpairs(np.zeros((4, 4)), 2)
    assert np.allclose(es.values, 0.0)
    assert np.abs(es.vectors.T @ es.vectors - np.eye(2)).max() <= 1e-12


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        top_eigenpairs(np.array([[0.0, 1.0], [0.5, 0.0]]), 1)   # not symmetric
    with pytest.raises(ValueError):
        top_eigenpairs(np.eye(3), 4)                             # d out of range
    with pytest.raises(ValueError):
        bottom_eigenpairs_skip(np.eye(3), 2, 2)                  # skip + d > n
