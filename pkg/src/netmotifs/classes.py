"""Canonical decimal codes for small connected subgraphs.

A labelled b-node graph is encoded by reading its upper-triangle adjacency
row by row as a binary number, first pair ``(0, 1)`` being the most
significant bit. The canonical code ``a`` of a topology is the minimum of
that number over all ``b!`` relabellings, written ``M_a^(b)``.

Labelled graphs are passed around as these integer bit masks, which keeps
per-node-set classification down to one cached dictionary lookup.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

MIN_B, MAX_B = 3, 6


class TemplateError(ValueError):
    pass


@lru_cache(maxsize=None)
def pair_positions(b: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(b), 2))


@lru_cache(maxsize=None)
def _perm_tables(b: int) -> tuple[np.ndarray, np.ndarray]:
    """For every permutation, the source bit position of each target bit,
    plus the bit weights (MSB first)."""
    pairs = pair_positions(b)
    pos = {p: k for k, p in enumerate(pairs)}
    table = []
    for perm in permutations(range(b)):
        row = []
        for i, j in pairs:
            u, v = perm[i], perm[j]
            row.append(pos[(u, v) if u < v else (v, u)])
        table.append(row)
    weights = 1 << np.arange(len(pairs) - 1, -1, -1, dtype=np.int64)
    return np.array(table, dtype=np.intp), weights


def mask_bits(b: int, mask: int) -> np.ndarray:
    L = b * (b - 1) // 2
    return np.array([(mask >> (L - 1 - k)) & 1 for k in range(L)], dtype=np.int64)


def matrix_to_mask(template) -> int:
    t = np.asarray(template, dtype=bool)
    b = t.shape[0]
    mask = 0
    for i, j in pair_positions(b):
        mask = (mask << 1) | int(t[i, j])
    return mask


def mask_to_matrix(b: int, mask: int) -> np.ndarray:
    t = np.zeros((b, b), dtype=bool)
    for bit, (i, j) in zip(mask_bits(b, mask), pair_positions(b)):
        t[i, j] = t[j, i] = bool(bit)
    return t


def relabelled_masks(b: int, mask: int) -> np.ndarray:
    """Mask value under every permutation (one entry per permutation)."""
    table, weights = _perm_tables(b)
    return mask_bits(b, mask)[table] @ weights


@lru_cache(maxsize=None)
def canonical_mask(b: int, mask: int) -> int:
    return int(relabelled_masks(b, mask).min())


@lru_cache(maxsize=None)
def orbit(b: int, mask: int) -> frozenset[int]:
    """All labelled masks isomorphic to ``mask``."""
    return frozenset(int(x) for x in relabelled_masks(b, mask))


def mask_connected(b: int, mask: int) -> bool:
    t = mask_to_matrix(b, mask)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(t[u]):
            if v not in seen:
                seen.add(int(v))
                stack.append(int(v))
    return len(seen) == b


def canonical_code(template) -> tuple[int, int]:
    """Return ``(b, a)`` for a connected template with 3 <= b <= 6."""
    t = np.asarray(template, dtype=bool)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise TemplateError("template must be a square matrix")
    b = t.shape[0]
    if not MIN_B <= b <= MAX_B:
        raise TemplateError(f"unsupported subgraph size b={b}")
    if np.any(np.diag(t)) or not np.array_equal(t, t.T):
        raise TemplateError("template must be simple and symmetric")
    mask = matrix_to_mask(t)
    if not mask_connected(b, mask):
        raise TemplateError("template is not connected")
    return b, canonical_mask(b, mask)


@lru_cache(maxsize=None)
def copies_in(b: int, class_mask: int, host_mask: int) -> int:
    """Number of edge subsets of a labelled host graph isomorphic to the class."""
    return sum(1 for h in orbit(b, class_mask) if h & ~host_mask == 0)


@dataclass(frozen=True)
class SubgraphClass:
    """A connected b-node topology identified by its canonical code."""

    b: int
    a: int
    name: str = ""

    def __post_init__(self):
        if not MIN_B <= self.b <= MAX_B:
            raise TemplateError(f"unsupported subgraph size b={self.b}")
        if not mask_connected(self.b, self.a) or canonical_mask(self.b, self.a) != self.a:
            raise TemplateError(f"{self.a} is not a canonical connected {self.b}-node code")

    @property
    def key(self) -> str:
        return f"M_{self.a}_{self.b}"

    @property
    def nonnested_key(self) -> str:
        return f"Mt_{self.a}_{self.b}"

    @property
    def template(self) -> np.ndarray:
        return mask_to_matrix(self.b, self.a)

    @property
    def edge_count(self) -> int:
        return bin(self.a).count("1")

    @property
    def is_complete(self) -> bool:
        return self.edge_count == self.b * (self.b - 1) // 2

    @property
    def is_star(self) -> bool:
        degs = sorted(self.template.sum(axis=0))
        return degs == [1] * (self.b - 1) + [self.b - 1]

    def __str__(self):
        return self.name or self.key


def gamma_ratio(cls: SubgraphClass) -> Fraction:
    """max |E'|/|V'| over subgraphs G' of the class template.

    The maximum is attained on an induced subgraph, so scanning node subsets
    is exhaustive.
    """
    t = cls.template
    best = Fraction(0)
    for size in range(1, cls.b + 1):
        for nodes in combinations(range(cls.b), size):
            e = int(t[np.ix_(nodes, nodes)].sum()) // 2
            best = max(best, Fraction(e, size))
    return best


THREE_STAR = SubgraphClass(3, 3, "3-star")
TRIANGLE = SubgraphClass(3, 7, "triangle")
FOUR_STAR = SubgraphClass(4, 11, "4-star")
FOUR_PATH = SubgraphClass(4, 13, "4-path")
TADPOLE = SubgraphClass(4, 15, "tadpole")
FOUR_CIRCLE = SubgraphClass(4, 30, "4-circle")
DIAMOND = SubgraphClass(4, 31, "diamond")
FOUR_COMPLETE = SubgraphClass(4, 63, "4-complete")
FIVE_STAR = SubgraphClass(5, 75, "5-star")
CRICKET = SubgraphClass(5, 79, "cricket")
BULL = SubgraphClass(5, 87, "bull")
BANNER = SubgraphClass(5, 94, "banner")
FIVE_CIRCLE = SubgraphClass(5, 236, "5-circle")
SIX_STAR = SubgraphClass(6, 1099, "6-star")

CORE_CLASSES = (THREE_STAR, TRIANGLE, FOUR_STAR, FOUR_PATH, TADPOLE,
                FOUR_CIRCLE, DIAMOND, FOUR_COMPLETE)
EXTRA_CLASSES = (FIVE_STAR, CRICKET, BULL, BANNER, FIVE_CIRCLE, SIX_STAR)
ALL_CLASSES = CORE_CLASSES + EXTRA_CLASSES
NONNESTED_FORMULA_CLASSES = (THREE_STAR, FOUR_STAR, FOUR_PATH, TADPOLE, FOUR_CIRCLE, DIAMOND)

_BY_KEY = {c.key: c for c in ALL_CLASSES}
_BY_NAME = {c.name: c for c in ALL_CLASSES}


def get_class(spec) -> SubgraphClass:
    """Look a class up by ``SubgraphClass``, key (``"M_7_3"``), name or ``(b, a)``."""
    if isinstance(spec, SubgraphClass):
        return spec
    if isinstance(spec, tuple):
        b, a = spec
        return _BY_KEY.get(f"M_{a}_{b}") or SubgraphClass(b, a)
    s = str(spec)
    if s in _BY_KEY:
        return _BY_KEY[s]
    if s in _BY_NAME:
        return _BY_NAME[s]
    parts = s.split("_")
    if len(parts) == 3 and parts[0] in ("M", "Mt") and parts[1].isdigit() and parts[2].isdigit():
        return get_class((int(parts[2]), int(parts[1])))
    raise KeyError(f"unknown subgraph class {spec!r}")
