from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netmotifs import (Graph, GraphError, build_graph, census, complete_graph, cycle_graph,
                       degree_stats, edge_churn, global_metrics, path_graph, star_graph)
from netmotifs.census import nested_counts

from oracles import random_adjacency


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_build_graph_dedupes_reversed_pairs():
    g = build_graph([("A", "B"), ("B", "A"), ("B", "C")])
    assert (g.n, g.m) == (3, 2)
    assert g.labels == ("A", "B", "C")


def test_build_graph_rejects_self_loop_and_empty():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph([("A", "A")])
    with pytest.raises(GraphError):
        build_graph([])


def test_build_graph_disconnected_is_flagged():
    g = build_graph([("A", "B"), ("C", "D")])
    assert (g.n, g.m) == (4, 2)
    assert not g.is_connected()
    assert global_metrics(g).connected is False


def test_labels_sorted_before_indexing():
    g = build_graph([("ZRH", "ATL"), ("ATL", "MDW")])
    assert g.labels == ("ATL", "MDW", "ZRH")
    assert g.index("ZRH") == 2


def test_graph_validation():
    a = np.zeros((3, 3), dtype=bool)
    a[0, 1] = True
    with pytest.raises(GraphError):
        Graph.from_adjacency(a)  # asymmetric
    b = np.eye(3, dtype=bool)
    with pytest.raises(GraphError):
        Graph.from_adjacency(b)  # self-links
    with pytest.raises(GraphError):
        Graph(("a", "a", "b"), np.zeros((3, 3), dtype=bool))


def test_adjacency_is_read_only():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        g.adj[0, 1] = False


def test_complete_graph_metrics():
    m = global_metrics(complete_graph(6))
    assert (m.density, m.diameter, m.average_path_length) == (1.0, 1, 1.0)
    assert m.clustering_overall == 1.0 and m.clustering_average == 1.0


def test_path3_metrics():
    m = global_metrics(path_graph(3))
    assert m.density == pytest.approx(2 / 3)
    assert m.diameter == 2
    assert m.average_path_length == pytest.approx(4 / 3)
    assert m.clustering_overall == 0.0


def test_c5_metrics():
    m = global_metrics(cycle_graph(5))
    assert m.diameter == 2
    assert m.average_path_length == pytest.approx(1.5)
    assert m.clustering_overall == 0.0


def test_path_diameter():
    for n in range(2, 12):
        assert global_metrics(path_graph(n)).diameter == n - 1


@pytest.mark.parametrize("seed", range(15))
def test_metrics_match_networkx(seed, random_graph):
    g = random_graph(seed, 18, 0.25)
    h = to_nx(g)
    m = global_metrics(g)
    if nx.is_connected(h):
        core = h
    else:
        core = h.subgraph(max(nx.connected_components(h), key=len))
    assert m.connected == nx.is_connected(h)
    assert m.diameter == nx.diameter(core)
    assert m.average_path_length == pytest.approx(nx.average_shortest_path_length(core))
    assert m.clustering_overall == pytest.approx(nx.transitivity(h))
    assert m.clustering_average == pytest.approx(nx.average_clustering(h))
    assert m.density == pytest.approx(nx.density(h))
    assert m.diameter >= m.average_path_length


@pytest.mark.parametrize("seed", range(10))
def test_overall_clustering_matches_census_ratio(seed, random_graph):
    g = random_graph(100 + seed, 15, 0.3)
    c = census(g)
    if c["M_3_3"]:
        assert global_metrics(g).clustering_overall == pytest.approx(3 * c["M_7_3"] / c["M_3_3"])


def test_degree_stats_star():
    s = degree_stats(star_graph(9))  # n = 10
    assert s.mean == Fraction(9, 5)  # 2 - 2/n
    assert s.second_moment == 9  # n - 1
    assert s.histogram == {1: Fraction(9, 10), 9: Fraction(1, 10)}


def test_degree_centrality_regular():
    assert np.all(degree_stats(complete_graph(4)).centrality == 1)
    assert np.allclose(degree_stats(cycle_graph(4)).centrality, 2 / 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 14), st.floats(0.05, 0.95), st.integers(0, 2 ** 32 - 1))
def test_degree_moment_identities(n, p, seed):
    g = Graph.from_adjacency(random_adjacency(np.random.default_rng(seed), n, p))
    s = degree_stats(g)
    c = nested_counts(g)
    assert c["M_3_3"] == Fraction(n, 2) * (s.second_moment - s.mean)
    assert c["M_11_4"] == Fraction(n, 6) * (s.third_moment - 3 * s.second_moment + 2 * s.mean)


def test_churn_examples():
    g1 = build_graph([("a", "b"), ("b", "c")])
    g2 = build_graph([("a", "b"), ("c", "d")])
    assert edge_churn(g1, g1) == (0, 0)
    assert edge_churn(g1, g2) == (50, 50)
    g3 = build_graph([("x", "y")])
    assert edge_churn(g1, g3) == (100, 100)


def test_churn_empty_denominator_is_missing():
    empty = Graph.from_adjacency(np.zeros((2, 2), dtype=bool), ["a", "b"])
    g = build_graph([("a", "b")])
    assert edge_churn(empty, g) == (100, None)
    assert edge_churn(g, empty) == (None, 100)
