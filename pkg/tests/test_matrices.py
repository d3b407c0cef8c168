"""Matrix builders: worked examples plus the eigh oracle for derived cases."""

import numpy as np
import pytest

from lrdpg.eigen import eigh_full
from lrdpg.graph import Graph
from lrdpg.matrices import (bethe_radius, build_bethe_hessian, build_centered,
                            build_modularity, build_norm_laplacian)


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_centered_single_edge():
    g = Graph(3, [(0, 1)])
    b = build_centered(g)
    assert b[0, 1] == pytest.approx(2 / 3)
    assert b[0, 2] == pytest.approx(-1 / 3)
    assert b[0, 0] == pytest.approx(-1 / 3)


def test_centered_empty_and_complete():
    assert np.allclose(build_centered(Graph(4, [])), 0.0)
    b = build_centered(complete_graph(4))
    off = b[~np.eye(4, dtype=bool)]
    assert np.allclose(off, 0.0)
    assert np.allclose(np.diag(b), -1.0)


def test_centered_offdiagonal_mean_is_zero():
    rng = np.random.default_rng(2)
    for _ in range(10):
        n = int(rng.integers(2, 25))
        iu = np.triu_indices(n, 1)
        mask = rng.random(iu[0].size) < 0.4
        g = Graph(n, np.column_stack([iu[0][mask], iu[1][mask]]))
        b = build_centered(g)
        off = b[~np.eye(n, dtype=bool)]
        assert abs(off.mean()) <= 1e-12
        assert np.abs(b - b.T).max() <= 1e-12


def test_modularity_single_edge():
    m = build_modularity(Graph(2, [(0, 1)]))
    assert np.allclose(m, [[-0.5, 0.5], [0.5, -0.5]])


def test_modularity_row_sums_zero():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(3, 25))
        iu = np.triu_indices(n, 1)
        mask = rng.random(iu[0].size) < 0.5
        if not mask.any():
            mask[0] = True
        g = Graph(n, np.column_stack([iu[0][mask], iu[1][mask]]))
        m = build_modularity(g)
        assert np.abs(m.sum(axis=1)).max() <= 1e-10


def test_modularity_star_center():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    m = build_modularity(star)
    assert m[0, 0] == pytest.approx(-1.5)


def test_modularity_rejects_edgeless():
    with pytest.raises(ValueError):
        build_modularity(Graph(3, []))


def test_norm_laplacian_single_edge():
    lap = build_norm_laplacian(Graph(2, [(0, 1)]))
    assert np.allclose(lap, [[1.0, -1.0], [-1.0, 1.0]])


def test_norm_laplacian_k3_eigenvalues():
    lap = build_norm_laplacian(complete_graph(3))
    vals = np.sort(eigh_full(lap).values)
    assert np.allclose(vals, [0.0, 1.5, 1.5], atol=1e-10)


def test_norm_laplacian_null_vector_is_sqrt_degree():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
    lap = build_norm_laplacian(g)
    es = eigh_full(lap)
    assert es.values[-1] == pytest.approx(0.0, abs=1e-10)
    sd = np.sqrt([2, 3, 2, 3, 2], dtype=float)
    sd /= np.linalg.norm(sd)
    null = es.vectors[:, -1]
    assert min(np.abs(null - sd).max(), np.abs(null + sd).max()) < 1e-8
    assert es.values.min() >= -1e-10 and es.values.max() <= 2 + 1e-10


def test_norm_laplacian_rejects_isolated():
    with pytest.raises(ValueError, match="node 2"):
        build_norm_laplacian(Graph(3, [(0, 1)]))


def test_bethe_hessian_four_regular():
    # 4-regular circulant: r = 2, H = 3I - 2A + D = 7I - 2A
    n = 8
    edges = set()
    for i in range(n):
        edges.add(tuple(sorted((i, (i + 1) % n))))
        edges.add(tuple(sorted((i, (i + 2) % n))))
    g = Graph(n, sorted(edges))
    r, degenerate = bethe_radius(g)
    assert r == pytest.approx(2.0) and not degenerate
    h = build_bethe_hessian(g)
    assert np.allclose(h, 7 * np.eye(n) - 2 * g.adjacency())


def test_bethe_hessian_regular_flat_vector_eigenvalue():
    # on a d-regular graph the all-ones vector has eigenvalue r^2-1-r*d+d
    g = complete_graph(5)  # 4-regular
    r = 1.7
    h = build_bethe_hessian(g, r=r)
    ones = np.ones(5)
    expected = r * r - 1 - r * 4 + 4
    assert np.allclose(h @ ones, expected * ones)


def test_bethe_hessian_k3_against_eigh_oracle():
    g = complete_graph(3)
    r, _ = bethe_radius(g)
    assert r == pytest.approx(np.sqrt(2.0))
    h = build_bethe_hessian(g)
    ref = np.sort(np.linalg.eigvalsh(h))
    got = np.sort(eigh_full(h).values)
    assert np.allclose(got, ref, atol=1e-10)


def test_bethe_radius_fallback_flagged():
    g = Graph(4, [(0, 1)])  # mean degree 0.5
    r, degenerate = bethe_radius(g)
    assert degenerate and r == pytest.approx(1.0 + 1e-6)
