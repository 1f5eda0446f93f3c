"""Simple undirected graphs and their descriptive statistics.

A :class:`Graph` is an immutable dense adjacency matrix plus the node labels
it was built from. Everything downstream (census formulas, null models,
centralities) works on the integer index space ``0..n-1``; labels are only
used for reporting.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path


class GraphError(ValueError):
    """Invalid graph input (self-loops, empty edge lists, bad adjacency)."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple, undirected, unweighted graph stored as a dense boolean matrix.

    Use :func:`build_graph` for label pairs or :meth:`Graph.from_adjacency`
    for a ready-made matrix. The adjacency array is made read-only.
    """

    labels: tuple[str, ...]
    adj: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] != len(self.labels):
            raise GraphError("label count does not match adjacency size")
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("node labels must be unique")
        a = a.astype(bool, copy=True)
        if np.any(np.diag(a)):
            raise GraphError("self-loops are not allowed")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency must be symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @classmethod
    def from_adjacency(cls, adj, labels: Sequence[str] | None = None) -> "Graph":
        adj = np.asarray(adj)
        if labels is None:
            width = len(str(max(adj.shape[0] - 1, 0)))
            labels = [str(i).zfill(width) for i in range(adj.shape[0])]
        return cls(tuple(str(x) for x in labels), adj)

    @classmethod
    def from_index_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                         labels: Sequence[str] | None = None) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if i == j:
                raise GraphError(f"self-loop at node {i}")
            a[i, j] = a[j, i] = True
        return cls.from_adjacency(a, labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return int(self.adj.sum()) // 2

    @property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1).astype(np.int64)

    def int_adj(self) -> np.ndarray:
        """Adjacency as int64, for exact matrix-power counting."""
        return self.adj.astype(np.int64)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as index pairs ``(i, j)`` with ``i < j``, sorted."""
        i, j = np.nonzero(np.triu(self.adj, 1))
        return list(zip(i.tolist(), j.tolist()))

    def label_edges(self) -> set[frozenset]:
        return {frozenset((self.labels[i], self.labels[j])) for i, j in self.edges()}

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.adj[i])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        ncomp, _ = connected_components(csr_matrix(self.adj), directed=False)
        return ncomp == 1

    def subgraph(self, nodes: Sequence[int]) -> "Graph":
        nodes = list(nodes)
        return Graph(tuple(self.labels[i] for i in nodes), self.adj[np.ix_(nodes, nodes)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.labels, self.adj.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(edges: Iterable[tuple[str, str]]) -> Graph:
    """Build a graph from label pairs.

    Reversed and exact duplicates collapse to a single undirected edge.
    Labels are sorted lexicographically before indices are assigned.
    """
    pairs = []
    for row, pair in enumerate(edges):
        u, v = (str(x) for x in pair)
        if u == v:
            raise GraphError(f"self-loop in edge row {row}: ({u}, {v})")
        pairs.append((u, v))
    if not pairs:
        raise GraphError("empty edge list")
    labels = sorted({x for p in pairs for x in p})
    index = {lab: k for k, lab in enumerate(labels)}
    a = np.zeros((len(labels), len(labels)), dtype=bool)
    for u, v in pairs:
        a[index[u], index[v]] = a[index[v], index[u]] = True
    return Graph(tuple(labels), a)


@dataclass(frozen=True)
class GraphMetrics:
    density: float
    diameter: int
    average_path_length: float
    clustering_overall: float
    clustering_average: float
    connected: bool

    def to_record(self) -> dict:
        return {
            "density": self.density,
            "diameter": self.diameter,
            "average_path_length": self.average_path_length,
            "clustering_overall": self.clustering_overall,
            "clustering_average": self.clustering_average,
            "connected": self.connected,
        }


def density(g: Graph) -> float:
    if g.n < 2:
        return 0.0
    return 2 * g.m / (g.n * (g.n - 1))


def _largest_component(g: Graph) -> np.ndarray:
    _, lab = connected_components(csr_matrix(g.adj), directed=False)
    sizes = np.bincount(lab)
    # ties go to the component holding the smallest node index
    return np.flatnonzero(lab == int(np.argmax(sizes)))


def path_lengths(g: Graph) -> tuple[int, float, bool]:
    """Diameter and average shortest path length via BFS.

    For disconnected graphs both are measured on the largest component and
    the returned flag is False.
    """
    connected = g.is_connected()
    nodes = np.arange(g.n) if connected else _largest_component(g)
    if len(nodes) < 2:
        return 0, 0.0, connected
    sub = csr_matrix(g.adj[np.ix_(nodes, nodes)].astype(np.int8))
    dist = shortest_path(sub, method="D", directed=False, unweighted=True)
    off = ~np.eye(len(nodes), dtype=bool)
    d = dist[off]
    return int(d.max()), float(d.mean()), connected


def local_clustering(g: Graph) -> np.ndarray:
    """Per-node triangle fraction; nodes with degree < 2 get 0."""
    a = g.adj.astype(np.float64)
    tri2 = np.rint(((a @ a) * a).sum(axis=1))  # 2 x triangles at i; exact in float64
    k = g.degrees
    pairs = k * (k - 1)
    out = np.zeros(g.n)
    ok = pairs > 0
    out[ok] = tri2[ok] / pairs[ok]
    return out


def global_metrics(g: Graph) -> GraphMetrics:
    if g.n == 0:
        raise GraphError("empty graph")
    a = g.adj.astype(np.float64)
    k = g.degrees
    triples = int((k * (k - 1) // 2).sum())
    triangles = int(round(((a @ a) * a).sum())) // 6
    overall = 3 * triangles / triples if triples else 0.0
    diam, apl, connected = path_lengths(g)
    return GraphMetrics(
        density=density(g),
        diameter=diam,
        average_path_length=apl,
        clustering_overall=overall,
        clustering_average=float(local_clustering(g).mean()),
        connected=connected,
    )


@dataclass(frozen=True)
class DegreeStats:
    degrees: np.ndarray
    centrality: np.ndarray
    mean: Fraction  # E[k]
    second_moment: Fraction  # E[k^2]
    third_moment: Fraction  # E[k^3]
    histogram: dict[int, Fraction]  # P(k)


def degree_stats(g: Graph) -> DegreeStats:
    if g.n < 2:
        raise GraphError("degree statistics need at least two nodes")
    k = g.degrees
    n = g.n
    ks = [int(x) for x in k]
    counts = Counter(ks)
    return DegreeStats(
        degrees=k,
        centrality=k / (n - 1),
        mean=Fraction(sum(ks), n),
        second_moment=Fraction(sum(x * x for x in ks), n),
        third_moment=Fraction(sum(x ** 3 for x in ks), n),
        histogram={d: Fraction(c, n) for d, c in sorted(counts.items())},
    )


def edge_churn(prev: Graph, curr: Graph) -> tuple[float | None, float | None]:
    """Percentage of routes added and lost between two periods.

    Edges are compared by label, so the two graphs may have different node
    sets. A percentage whose denominator graph has no edges is ``None``.
    """
    e_prev = prev.label_edges()
    e_curr = curr.label_edges()
    added = 100 * len(e_curr - e_prev) / len(e_curr) if e_curr else None
    lost = 100 * len(e_prev - e_curr) / len(e_prev) if e_prev else None
    return added, lost


# small deterministic families used in tests, demos and the toy models

def complete_graph(n: int) -> Graph:
    return Graph.from_adjacency(~np.eye(n, dtype=bool))


def cycle_graph(n: int) -> Graph:
    return Graph.from_index_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_index_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """S_{1,leaves}: node 0 is the center."""
    return Graph.from_index_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
