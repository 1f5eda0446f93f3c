"""Exact nested and non-nested counts of small subgraphs.

Nested counts of the eight 3- and 4-node classes come from closed forms in
degrees, traces and entries of matrix powers of the adjacency matrix; the
4-complete count sums triangle counts over node neighbourhoods. Non-nested
counts are fixed linear combinations of the nested ones. Larger classes
(5-node, 6-star) fall back on the enumeration engine, except stars which
have their own degree formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import numpy as np

from .classes import (CORE_CLASSES, SubgraphClass, get_class)
from .enumeration import count_instances
from .graph import Graph

# int64 matrix powers stay exact while tr(g^4) <= n^4 fits comfortably
MAX_EXACT_N = 20_000


class CensusInvariantError(RuntimeError):
    """An identity that must hold exactly failed (a bug, not bad input)."""


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise CensusInvariantError(f"{what}: {num} not divisible by {den}")
    return q


def _int_adj(g: Graph) -> np.ndarray:
    if g.n > MAX_EXACT_N:
        raise OverflowError(f"n={g.n} exceeds exact-arithmetic limit {MAX_EXACT_N}")
    return g.int_adj()


def _square(a: np.ndarray) -> np.ndarray:
    """a @ a for a 0/1 matrix through float BLAS; entries are <= n < 2^53, so exact."""
    f = a.astype(np.float64)
    return (f @ f).astype(np.int64)


def star_count(g: Graph, b: int) -> int:
    """Number of nested b-node stars: sum over nodes of C(k_i, b-1)."""
    if b < 3:
        raise ValueError("stars need b >= 3")
    return sum(comb(int(k), b - 1) for k in g.degrees)


def four_cliques(g: Graph, a: np.ndarray | None = None) -> int:
    """4-complete count from triangles inside each neighbourhood."""
    if a is None:
        a = _int_adj(g)
    total = 0
    for i in range(g.n):
        nb = np.flatnonzero(a[i])
        if len(nb) < 3:
            continue
        s = a[np.ix_(nb, nb)]
        if s.any():
            total += int((_square(s) * s).sum())
    return _exact_div(total, 24, "4-complete")


def nested_counts(g: Graph) -> dict[str, int]:
    """The eight nested 3-/4-node counts, keyed ``M_{a}_{b}``."""
    a = _int_adj(g)
    k = a.sum(axis=1)
    m = int(k.sum()) // 2
    a2 = _square(a)
    a3_diag = (a2 * a).sum(axis=1)  # (g^3)_ii

    m3 = int((k * (k - 1)).sum()) // 2
    m7 = _exact_div(int(a3_diag.sum()), 6, "triangle")
    m11 = _exact_div(int((k * (k - 1) * (k - 2)).sum()), 6, "4-star")
    iu, ju = np.nonzero(np.triu(a, 1))
    m13 = int(((k[iu] - 1) * (k[ju] - 1)).sum()) - 3 * m7
    big = k > 2
    m15 = _exact_div(int((a3_diag[big] * (k[big] - 2)).sum()), 2, "tadpole")
    tr4 = int((a2 * a2).sum())
    m30 = _exact_div(tr4 - 4 * m3 - 2 * m, 8, "4-circle")
    t = a2 * a  # triangles on each edge
    m31 = _exact_div(int((t * (t - 1)).sum()), 4, "diamond")
    m63 = four_cliques(g, a)
    return {"M_3_3": m3, "M_7_3": m7, "M_11_4": m11, "M_13_4": m13,
            "M_15_4": m15, "M_30_4": m30, "M_31_4": m31, "M_63_4": m63}


def nonnested_counts(nested: dict[str, int]) -> dict[str, int]:
    """Non-nested counts from nested ones, keyed ``Mt_{a}_{b}``.

    The triangle and 4-complete cannot be nested, so their entries copy the
    nested values.
    """
    M = nested
    out = {
        "Mt_3_3": M["M_3_3"] - 3 * M["M_7_3"],
        "Mt_7_3": M["M_7_3"],
        "Mt_11_4": M["M_11_4"] - M["M_15_4"] + 2 * M["M_31_4"] - 4 * M["M_63_4"],
        "Mt_13_4": (M["M_13_4"] - 2 * M["M_15_4"] - 4 * M["M_30_4"]
                    + 6 * M["M_31_4"] - 12 * M["M_63_4"]),
        "Mt_15_4": M["M_15_4"] - 4 * M["M_31_4"] + 12 * M["M_63_4"],
        "Mt_30_4": M["M_30_4"] - M["M_31_4"] + 3 * M["M_63_4"],
        "Mt_31_4": M["M_31_4"] - 6 * M["M_63_4"],
        "Mt_63_4": M["M_63_4"],
    }
    bad = {key: v for key, v in out.items() if v < 0}
    if bad:
        raise CensusInvariantError(f"negative non-nested counts: {bad}")
    return out


@dataclass(frozen=True)
class CensusReport:
    n: int
    m: int
    nested: dict[str, int] = field(default_factory=dict)
    nonnested: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, key: str) -> int:
        if key.startswith("Mt_"):
            return self.nonnested[key]
        return self.nested[key]

    def get(self, cls, nested: bool = True) -> int:
        c = get_class(cls)
        return self.nested[c.key] if nested else self.nonnested[c.nonnested_key]

    def core_tuple(self) -> tuple[int, ...]:
        return tuple(self.nested[c.key] for c in CORE_CLASSES)

    def to_record(self) -> dict:
        return {"n": self.n, "m": self.m, **self.nested, **self.nonnested}


def census(g: Graph, extra: Iterable = ()) -> CensusReport:
    """Full census: the eight nested and eight non-nested 3-/4-node counts,
    plus any extra classes (b = 5, 6) requested."""
    nested = nested_counts(g)
    nonnested = nonnested_counts(nested)
    extra = [get_class(c) for c in extra]
    extra = [c for c in extra if c.key not in nested]
    if extra:
        counted = count_instances(g, extra)
        for c in extra:
            nested[c.key] = star_count(g, c.b) if c.is_star else counted[c.key]
            nonnested[c.nonnested_key] = counted[c.nonnested_key]
    return CensusReport(g.n, g.m, nested, nonnested)


def nested_census(g: Graph) -> tuple[int, ...]:
    """Counts of M_3, M_7, M_11, M_13, M_15, M_30, M_31, M_63 in that order."""
    return tuple(nested_counts(g).values())


def nonnested_census(g: Graph) -> tuple[int, ...]:
    """Counts of Mt_3, Mt_11, Mt_13, Mt_15, Mt_30, Mt_31 in that order."""
    nn = nonnested_counts(nested_counts(g))
    return tuple(nn[k] for k in ("Mt_3_3", "Mt_11_4", "Mt_13_4", "Mt_15_4", "Mt_30_4", "Mt_31_4"))


def triangle_count(a: np.ndarray) -> int:
    """Triangles of an int adjacency matrix (hot path for null ensembles)."""
    return _exact_div(int((_square(a) * a).sum()), 6, "triangle")


def class_count(g: Graph, cls: SubgraphClass, nested: bool = True) -> int:
    rep = census(g, extra=[cls] if cls.b > 4 else ())
    return rep.get(cls, nested)
