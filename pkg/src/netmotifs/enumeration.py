"""Listing subgraph instances.

Two engines are provided:

* ``"extension"`` grows connected node sets one neighbour at a time (each
  connected b-set is produced exactly once) and classifies the induced
  subgraph by its bit mask. This is the default and the only sensible
  choice for b = 5, 6.
* ``"subsets"`` walks all b-subsets with increasing loop indices. It is kept
  for b = 3, 4 as an independent cross-check of the extension engine.

An instance is a node tuple plus the edges realising the class on it. In
non-nested mode the edges are the full induced edge set, so each node set
appears at most once. In nested mode a node set appears once per distinct
edge subset isomorphic to the class: K_4 holds three nested 4-circles on the
same four nodes, matching the analytic counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Literal

import numpy as np

from .classes import (MAX_B, MIN_B, SubgraphClass, canonical_mask, copies_in,
                      get_class, mask_connected, orbit, pair_positions)
from .graph import Graph

Mode = Literal["nested", "non-nested"]


@dataclass(frozen=True, order=True)
class Instance:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def _neighbor_sets(g: Graph) -> list[frozenset[int]]:
    return [frozenset(np.flatnonzero(g.adj[i]).tolist()) for i in range(g.n)]


def connected_node_sets(g: Graph, b: int) -> Iterator[tuple[int, ...]]:
    """Every connected induced b-node set, each exactly once (sorted tuples).

    Extension enumeration: a set rooted at its smallest node v only grows by
    nodes larger than v that are exclusive neighbours of the newest member,
    which rules out duplicates without any bookkeeping.
    """
    nbrs = _neighbor_sets(g)

    def extend(sub: list[int], ext: set[int], excl: set[int], v: int):
        if len(sub) == b:
            yield tuple(sorted(sub))
            return
        ext = set(ext)
        while ext:
            w = ext.pop()
            new = {u for u in nbrs[w] if u > v and u not in excl}
            yield from extend(sub + [w], ext | new, excl | new, v)

    for v in range(g.n):
        start = {u for u in nbrs[v] if u > v}
        yield from extend([v], start, start | {v}, v)


def induced_mask(adj: np.ndarray, nodes: tuple[int, ...]) -> int:
    mask = 0
    for i, j in pair_positions(len(nodes)):
        mask = (mask << 1) | int(adj[nodes[i], nodes[j]])
    return mask


def _node_sets(g: Graph, b: int, method: str) -> Iterator[tuple[int, ...]]:
    if method == "extension":
        return connected_node_sets(g, b)
    if method == "subsets":
        if b > 4:
            raise ValueError("subset loops are only provided for b = 3, 4")
        return combinations(range(g.n), b)
    raise ValueError(f"unknown enumeration method {method!r}")


def _instances_on(nodes, host_mask, cls: SubgraphClass, mode: Mode):
    b = cls.b
    pairs = pair_positions(b)
    L = len(pairs)

    def edges_of(mask):
        return tuple((nodes[i], nodes[j]) for k, (i, j) in enumerate(pairs)
                     if (mask >> (L - 1 - k)) & 1)

    if mode == "non-nested":
        if canonical_mask(b, host_mask) == cls.a:
            yield Instance(nodes, edges_of(host_mask))
    else:
        for h in sorted(orbit(b, cls.a)):
            if h & ~host_mask == 0:
                yield Instance(nodes, edges_of(h))


def _check(cls, mode):
    if not MIN_B <= cls.b <= MAX_B:
        raise ValueError(f"unsupported subgraph size b={cls.b}")
    if mode not in ("nested", "non-nested"):
        raise ValueError(f"mode must be 'nested' or 'non-nested', got {mode!r}")


def enumerate_instances(g: Graph, cls, mode: Mode = "nested",
                        method: str = "extension") -> list[Instance]:
    """List every instance of ``cls`` in ``g``, sorted, each exactly once."""
    cls = get_class(cls)
    _check(cls, mode)
    adj = g.adj
    out = []
    for nodes in _node_sets(g, cls.b, method):
        mask = induced_mask(adj, nodes)
        if method == "subsets" and not mask_connected(cls.b, mask):
            continue
        out.extend(_instances_on(nodes, mask, cls, mode))
    out.sort()
    return out


def count_instances(g: Graph, classes, method: str = "extension") -> dict[str, int]:
    """Nested and non-nested counts for several classes in one pass per size.

    Keys are ``cls.key`` (nested) and ``cls.nonnested_key`` (non-nested).
    """
    classes = [get_class(c) for c in classes]
    counts = {}
    for b in sorted({c.b for c in classes}):
        group = [c for c in classes if c.b == b]
        nested = dict.fromkeys((c.a for c in group), 0)
        exact = dict.fromkeys((c.a for c in group), 0)
        for nodes in _node_sets(g, b, method):
            mask = induced_mask(g.adj, nodes)
            if method == "subsets" and not mask_connected(b, mask):
                continue
            canon = canonical_mask(b, mask)
            if canon in exact:
                exact[canon] += 1
            for a in nested:
                nested[a] += copies_in(b, a, mask)
        for c in group:
            counts[c.key] = nested[c.a]
            counts[c.nonnested_key] = exact[c.a]
    return counts


def list_four_circles(g: Graph, nested: bool = True) -> list[tuple[int, int, int, int]]:
    """4-circles via the reference/opposite loop ordering.

    ``i`` is the smallest node of the circle, ``j`` its opposite corner and
    ``x < y`` the two interchangeable corners, so each circle is produced
    once. Returned tuples are ``(i, x, j, y)`` in traversal order. With
    ``nested=False`` the diagonals ``(i, j)`` and ``(x, y)`` must be absent.
    """
    a = g.adj
    n = g.n
    out = []
    for i in range(n - 3):
        for j in range(i + 1, n):
            if not nested and a[i, j]:
                continue
            for x in range(i + 1, n - 1):
                if x == j or not (a[i, x] and a[x, j]):
                    continue
                for y in range(x + 1, n):
                    if y == j or not (a[i, y] and a[y, j]):
                        continue
                    if not nested and a[x, y]:
                        continue
                    out.append((i, x, j, y))
    return out


def runtime_model(n: int) -> tuple[float, int, float]:
    """Loop-count cost of the ordered 4-circle search versus naive loops.

    Returns ``(T, T1, T1 / T)`` with unit cost per innermost iteration, where
    ``T(n) = (n-3)(3n^3 - n^2 + 6n + 16)/24`` and ``T1(n) = n^4``.
    """
    if n < 4:
        raise ValueError("runtime model needs n >= 4")
    t = (n - 3) * (3 * n ** 3 - n ** 2 + 6 * n + 16) / 24
    t1 = n ** 4
    return t, t1, t1 / t


def runtime_loop_count(n: int) -> int:
    """Exact iteration count of the ordered loops, i in 1..n-3, j > i,
    i < x < y (no distinctness filtering)."""
    total = 0
    for i in range(1, n - 2):
        for _j in range(i + 1, n + 1):
            for x in range(i + 1, n):
                total += n - x
    return total
