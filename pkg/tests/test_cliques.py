import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netmotifs import (Graph, build_graph, census, clique_analysis, complete_graph, cycle_graph,
                       fisher_ryan_bound, maximal_cliques)

from oracles import random_adjacency


def test_k4():
    ca = clique_analysis(complete_graph(4))
    assert ca.maximal_cliques == [(0, 1, 2, 3)] and ca.clique_number == 4
    assert ca.T == {1: 4, 2: 6, 3: 4, 4: 1}


def test_triangle_with_pendant():
    g = build_graph([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    ca = clique_analysis(g)
    assert ca.maximal_cliques == [(0, 1, 2), (2, 3)] and ca.clique_number == 3


def test_c5():
    ca = clique_analysis(cycle_graph(5))
    assert len(ca.maximal_cliques) == 5 and ca.clique_number == 2


@pytest.mark.parametrize("seed", range(15))
def test_maximal_cliques_match_networkx(seed, random_graph):
    g = random_graph(seed, 20, 0.4)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(h))
    assert sorted(maximal_cliques(g)) == expected
    ca = clique_analysis(g)
    c = census(g)
    assert ca.T[3] == c["M_7_3"] and ca.T[4] == c["M_63_4"]
    assert ca.T[1] == g.n and ca.T[2] == g.m


def test_fisher_ryan_worked_numbers():
    assert fisher_ryan_bound(88, 11, 1) == 3520
    assert fisher_ryan_bound(522, 11, 2) == 4824
    assert fisher_ryan_bound(1501, 11, 3) == 6266


def test_fisher_ryan_h_at_least_w():
    assert fisher_ryan_bound(5, 3, 3) == 0
    with pytest.raises(ValueError):
        fisher_ryan_bound(5, 3, 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 16), st.floats(0.1, 0.95), st.integers(0, 2 ** 32 - 1))
def test_bounds_hold(n, p, seed):
    g = Graph.from_adjacency(random_adjacency(np.random.default_rng(seed), n, p))
    ca = clique_analysis(g)
    w = ca.clique_number
    if w >= 2:
        assert g.m <= fisher_ryan_bound(g.n, w, 1)
        assert ca.T[3] <= fisher_ryan_bound(g.m, w, 2)
        assert ca.T[4] <= fisher_ryan_bound(ca.T[3], w, 3)
