"""Maximal cliques, clique number and bounds on complete-subgraph counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor

from .census import four_cliques, triangle_count
from .graph import Graph


@dataclass(frozen=True)
class CliqueAnalysis:
    maximal_cliques: list[tuple[int, ...]]
    clique_number: int
    T: dict[int, int]  # h -> number of h-complete subgraphs, h = 1..4


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with Tomita pivoting), sorted."""
    nbrs = [set(g.neighbors(i).tolist()) for i in range(g.n)]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(g.n)), set())
    return sorted(out, key=lambda c: (-len(c), c))


def clique_analysis(g: Graph) -> CliqueAnalysis:
    cl = maximal_cliques(g)
    w = max((len(c) for c in cl), default=0)
    a = g.int_adj()
    T = {1: g.n, 2: g.m, 3: triangle_count(a), 4: four_cliques(g, a)}
    return CliqueAnalysis(cl, w, T)


def fisher_ryan_bound(T_h: int, w: int, h: int) -> int:
    """Upper bound on T_{h+1} given T_h and the clique number w.

    floor(C(w, h+1) * (T_h / C(w, h))^((h+1)/h)); 0 when h >= w.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    if h >= w:
        return 0
    ratio = Fraction(T_h, comb(w, h))
    val = comb(w, h + 1) * float(ratio) ** ((h + 1) / h)
    # snap values within rounding noise of an integer (e.g. 55*(88/11)^2 = 3520)
    r = round(val)
    if abs(val - r) < 1e-9 * max(1.0, abs(val)):
        return int(r)
    return floor(val)
