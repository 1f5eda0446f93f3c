from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netmotifs import (Graph, census, complete_graph, cycle_graph, enumerate_instances,
                       nested_census, nonnested_census, star_graph)
from netmotifs.census import CensusInvariantError, nonnested_counts, star_count
from netmotifs.classes import (ALL_CLASSES, CORE_CLASSES, EXTRA_CLASSES, FOUR_CIRCLE,
                               FOUR_COMPLETE, THREE_STAR, TRIANGLE)
from netmotifs.enumeration import (count_instances, list_four_circles, runtime_loop_count,
                                   runtime_model)

from oracles import TEMPLATES, brute_force_counts, random_adjacency, template_copies

CORE_KEYS = [c.key for c in CORE_CLASSES]


def test_k4_census():
    assert nested_census(complete_graph(4)) == (12, 4, 4, 12, 12, 3, 6, 1)
    assert nonnested_census(complete_graph(4)) == (0, 0, 0, 0, 0, 0)


def test_c5_census():
    c = census(cycle_graph(5))
    assert c["M_3_3"] == 5 and c["M_7_3"] == 0 and c["M_13_4"] == 5
    assert all(c[k] == 0 for k in CORE_KEYS[2:] if k != "M_13_4")
    oracle = brute_force_counts(cycle_graph(5).adj, CORE_KEYS)
    assert all(c[k] == oracle[k] for k in CORE_KEYS)


def test_star_census():
    c = census(star_graph(5))
    assert c["M_3_3"] == comb(5, 2) and c["M_11_4"] == comb(5, 3) and c["M_7_3"] == 0


def test_triangle_and_c4_nonnested():
    assert census(complete_graph(3))["Mt_3_3"] == 0
    c4 = census(cycle_graph(4))
    assert c4["Mt_30_4"] == 1 and c4["Mt_3_3"] == 4


def test_star_count():
    assert star_count(star_graph(5), 4) == 10
    assert star_count(cycle_graph(7), 4) == 0  # max degree 2 < b - 1
    g = Graph.from_adjacency(random_adjacency(np.random.default_rng(15), 15, 0.4))
    oracle = brute_force_counts(g.adj, ["M_75_5", "M_1099_6"])
    assert star_count(g, 5) == oracle["M_75_5"]
    assert star_count(g, 6) == oracle["M_1099_6"]


def test_negative_nonnested_is_an_invariant_error():
    bad = dict(zip(CORE_KEYS, (0, 5, 0, 0, 0, 0, 0, 0)))
    with pytest.raises(CensusInvariantError):
        nonnested_counts(bad)


@pytest.mark.parametrize("seed", range(25))
def test_formulas_match_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(6, 16))
    g = Graph.from_adjacency(random_adjacency(rng, n, float(rng.uniform(0.15, 0.7))))
    c = census(g)
    oracle = brute_force_counts(g.adj, CORE_KEYS)
    for k, v in oracle.items():
        assert c[k] == v, k


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 11), st.floats(0.1, 0.9), st.integers(0, 2 ** 32 - 1))
def test_census_invariants(n, p, seed):
    g = Graph.from_adjacency(random_adjacency(np.random.default_rng(seed), n, p))
    c = census(g)
    for cls in CORE_CLASSES:
        assert 0 <= c[cls.nonnested_key] <= c[cls.key]
    assert c["Mt_7_3"] == c["M_7_3"] and c["Mt_63_4"] == c["M_63_4"]


def test_five_and_six_node_counts_match_brute_force():
    g = Graph.from_adjacency(random_adjacency(np.random.default_rng(7), 12, 0.4))
    keys = [c.key for c in EXTRA_CLASSES]
    c = census(g, extra=EXTRA_CLASSES)
    oracle = brute_force_counts(g.adj, keys)
    for k in keys:
        assert c[k] == oracle[k], k
        assert c["Mt" + k[1:]] == oracle["Mt" + k[1:]], k


def test_complete_graph_extra_counts_from_automorphisms():
    g = complete_graph(9)
    c = census(g, extra=EXTRA_CLASSES)
    for cls in EXTRA_CLASSES:
        assert c[cls.key] == comb(9, cls.b) * len(template_copies(cls.key))
        assert c[cls.nonnested_key] == 0


def test_enumerate_k4_complete():
    inst = enumerate_instances(complete_graph(4), FOUR_COMPLETE)
    assert [i.nodes for i in inst] == [(0, 1, 2, 3)]


def test_enumerate_c4_three_stars():
    inst = enumerate_instances(cycle_graph(4), THREE_STAR, "nested")
    assert len(inst) == 4
    centres = sorted(next(v for v in i.nodes if sum(v in e for e in i.edges) == 2) for i in inst)
    assert centres == [0, 1, 2, 3]


@pytest.mark.parametrize("method", ["extension", "subsets"])
def test_instance_lists_match_formulas(method, random_graph):
    g = random_graph(2020, 20, 0.3)
    c = census(g)
    for cls in CORE_CLASSES:
        for mode, key in (("nested", cls.key), ("non-nested", cls.nonnested_key)):
            inst = enumerate_instances(g, cls, mode, method=method)
            assert len(inst) == c[key], (key, method)
            assert len(set(inst)) == len(inst)


def test_engines_agree_on_counts(random_graph):
    g = random_graph(5, 14, 0.35)
    a = count_instances(g, ALL_CLASSES, "extension")
    b = count_instances(g, [c for c in ALL_CLASSES if c.b <= 4], "subsets")
    assert all(a[k] == v for k, v in b.items())


def test_instances_well_formed(random_graph):
    g = random_graph(11, 12, 0.45)
    for cls in ALL_CLASSES:
        for mode in ("nested", "non-nested"):
            inst = enumerate_instances(g, cls, mode)
            for i in inst:
                assert len(set(i.nodes)) == cls.b and len(i.edges) == cls.edge_count
                assert all(g.adj[u, v] and u in i.nodes and v in i.nodes for u, v in i.edges)
            if mode == "non-nested" or cls.is_complete:
                sets = [i.nodes for i in inst]
                assert len(set(sets)) == len(sets)


def test_unsupported_size():
    with pytest.raises(Exception):
        enumerate_instances(complete_graph(8), (7, 0))


def test_four_circle_loops(random_graph):
    g = random_graph(3, 16, 0.35)
    c = census(g)
    assert len(list_four_circles(g, nested=True)) == c["M_30_4"]
    nn = list_four_circles(g, nested=False)
    assert len(nn) == c["Mt_30_4"]
    assert len({frozenset(q) for q in nn}) == len(nn)


def test_runtime_model():
    t, t1, ratio = runtime_model(88)
    assert ratio == pytest.approx(8.31, abs=0.01)
    assert runtime_model(4)[0] == 9
    assert runtime_model(10 ** 6)[2] == pytest.approx(8, rel=1e-4)
    for n in range(4, 30):
        assert runtime_loop_count(n) == runtime_model(n)[0]
