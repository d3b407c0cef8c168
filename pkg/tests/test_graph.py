"""Graph container, statistics, and TSV I/O."""

import io

import numpy as np
import pytest

from lrdpg.graph import (EdgeListFormatError, Graph, degrees, density,
                         drop_isolated, load_edge_list, load_labels,
                         save_edge_list, save_labels)


def test_load_basic():
    g = load_edge_list("0 1\n1 2")
    assert g.n == 3
    assert g.edge_set() == {(0, 1), (1, 2)}


def test_load_collapses_reversed_and_duplicate_pairs():
    g = load_edge_list("0 1\n1 0")
    assert g.n == 2
    assert g.edge_set() == {(0, 1)}
    g = load_edge_list("2 5\n2 5\n5 2")
    assert g.num_edges == 1


def test_load_rejects_self_loop():
    with pytest.raises(EdgeListFormatError, match="self-loop"):
        load_edge_list("0 0")


def test_load_reports_line_numbers():
    with pytest.raises(EdgeListFormatError, match="line 2"):
        load_edge_list("0 1\n0 x")
    with pytest.raises(EdgeListFormatError, match="line 3"):
        load_edge_list("0 1\n1 2\n4")


def test_header_supports_isolated_nodes():
    g = load_edge_list("# n=5\n0 1")
    assert g.n == 5
    assert degrees(g).tolist() == [1, 1, 0, 0, 0]
    with pytest.raises(ValueError, match="smaller than max node id"):
        load_edge_list("# n=2\n0 3")


def test_comments_ignored():
    g = load_edge_list("# a comment\n0 1\n# another\n1 2")
    assert g.num_edges == 2


def test_density_examples():
    triangle = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert density(triangle) == 1.0
    single = Graph(3, [(0, 1)])
    assert density(single) == pytest.approx(1 / 3)
    assert density(Graph(5, [])) == 0.0
    with pytest.raises(ValueError):
        density(Graph(1, []))


def test_degrees_examples():
    path = Graph(3, [(0, 1), (1, 2)])
    assert degrees(path).tolist() == [1, 2, 1]
    assert degrees(Graph(2, [])).tolist() == [0, 0]
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert degrees(k4).tolist() == [3, 3, 3, 3]


def test_degree_sum_is_twice_edge_count_random():
    rng = np.random.default_rng(0)
    for _ in range(25):
        n = int(rng.integers(2, 40))
        iu = np.triu_indices(n, 1)
        mask = rng.random(iu[0].size) < 0.3
        g = Graph(n, np.column_stack([iu[0][mask], iu[1][mask]]))
        assert degrees(g).sum() == 2 * g.num_edges
        assert 0.0 <= density(g) <= 1.0


def test_save_load_round_trip_preserves_edges_and_isolated_nodes():
    rng = np.random.default_rng(1)
    for _ in range(10):
        n = int(rng.integers(2, 30))
        iu = np.triu_indices(n, 1)
        mask = rng.random(iu[0].size) < 0.2
        g = Graph(n, np.column_stack([iu[0][mask], iu[1][mask]]))
        buf = io.StringIO()
        save_edge_list(g, buf)
        g2 = load_edge_list(buf.getvalue())
        assert g2 == g


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(2, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(0, [])


def test_drop_isolated():
    g = load_edge_list("# n=6\n0 2\n2 4")
    reduced, keep = drop_isolated(g)
    assert reduced.n == 3
    assert keep.tolist() == [0, 2, 4]
    assert reduced.edge_set() == {(0, 1), (1, 2)}


def test_load_labels_examples():
    labels = load_labels("0 lib\n1 con", 2)
    assert labels.k == 2
    assert labels.c.tolist() == [0, 1]
    assert labels.names == ("lib", "con")

    labels = load_labels("0 a\n1 a", 2)
    assert labels.k == 1
    assert labels.c.tolist() == [0, 0]

    with pytest.raises(ValueError, match="missing for nodes: 1"):
        load_labels("0 a", 2)
    with pytest.raises(EdgeListFormatError, match="out of range"):
        load_labels("0 a\n5 b", 2)


def test_labels_round_trip():
    labels = load_labels("0 x\n1 y\n2 x", 3)
    buf = io.StringIO()
    save_labels(labels, buf)
    again = load_labels(buf.getvalue(), 3)
    assert again.c.tolist() == labels.c.tolist()
    assert again.names == labels.names
