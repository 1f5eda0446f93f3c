"""Node rankings: degree, closed-walk subgraph centrality and subgraph membership."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np
from scipy.linalg import eigh

from .classes import get_class
from .enumeration import enumerate_instances
from .graph import Graph


@dataclass(frozen=True)
class CentralityVector:
    measure: str
    values: np.ndarray
    labels: tuple[str, ...]
    params: dict = field(default_factory=dict)

    def __getitem__(self, label: str) -> float:
        return self.values[self.labels.index(label)]


def degree_centrality(g: Graph) -> CentralityVector:
    if g.n < 2:
        raise ValueError("degree centrality needs n >= 2")
    return CentralityVector("DC", g.degrees / (g.n - 1), g.labels)


def subgraph_centrality_estrada(g: Graph) -> CentralityVector:
    """B_S(i) = sum_j (v_j)_i^2 exp(lambda_j) from the symmetric eigendecomposition."""
    if g.n == 1:
        return CentralityVector("B_S", np.ones(1), g.labels)
    lam, vec = eigh(g.adj.astype(float), driver="evr")
    return CentralityVector("B_S", (vec ** 2) @ np.exp(lam), g.labels)


def subgraph_centrality_series(g: Graph, terms: int = 30) -> np.ndarray:
    """diag(exp(g)) from a truncated power series with scaling and squaring.

    The matrix is scaled by 2^-s so its norm is at most 1/2, the series
    sum_{tau<=terms} (g/2^s)^tau / tau! is summed directly, and the result
    squared s times. With s = 0 this is the plain truncated closed-walk sum.
    """
    a = g.adj.astype(float)
    norm = np.abs(a).sum(axis=1).max() if g.n else 0.0
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    x = a / 2.0 ** s
    term = np.eye(g.n)
    total = np.eye(g.n)
    for tau in range(1, terms + 1):
        term = term @ x / tau
        total = total + term
    for _ in range(s):
        total = total @ total
    return np.diag(total).copy()


def closed_walk_series(g: Graph, terms: int = 30) -> np.ndarray:
    """Unscaled sum_{tau<=terms} (g^tau)_ii / tau!, exact integer walk counts."""
    a = g.int_adj().astype(object)
    power = np.eye(g.n, dtype=np.int64).astype(object)
    total = np.zeros(g.n)
    for tau in range(terms + 1):
        total = total + np.array([float(power[i, i]) for i in range(g.n)]) / factorial(tau)
        power = power.dot(a)
    return total


def membership_centrality(g: Graph, cls, mode: str = "non-nested",
                          edge_coverage: bool = False) -> CentralityVector:
    """Per node, the number of instances of ``cls`` containing it.

    With ``edge_coverage=True`` node i instead scores the number of distinct
    neighbours j such that edge (i, j) belongs to at least one instance.
    """
    c = get_class(cls)
    inst = enumerate_instances(g, c, mode)
    vals = np.zeros(g.n, dtype=np.int64)
    if edge_coverage:
        covered = set()
        for ins in inst:
            covered.update(ins.edges)
        for i, j in covered:
            vals[i] += 1
            vals[j] += 1
    else:
        for ins in inst:
            vals[list(ins.nodes)] += 1
    name = f"B_SM({c.key if mode == 'nested' else c.nonnested_key})"
    return CentralityVector(name, vals, g.labels,
                            {"class": c.key, "mode": mode, "edge_coverage": edge_coverage})


@dataclass(frozen=True)
class Ranking:
    measures: list[str]
    top: dict[str, list[tuple[int, str, float]]]  # measure -> [(rank, label, value)]
    correlation: np.ndarray  # NaN where undefined

    def to_records(self) -> list[dict]:
        return [{"rank": r, "measure": m, "label": lab, "value": v}
                for m in self.measures for r, lab, v in self.top[m]]


def top_k(v: CentralityVector, k: int) -> list[tuple[int, str, float]]:
    order = sorted(range(len(v.values)), key=lambda i: (-v.values[i], v.labels[i]))
    return [(r + 1, v.labels[i], float(v.values[i])) for r, i in enumerate(order[:k])]


def pearson(x, y) -> float:
    """Pearson correlation; NaN if either vector is constant."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx, dy = x - x.mean(), y - y.mean()
    sx, sy = np.sqrt(dx @ dx), np.sqrt(dy @ dy)
    if sx == 0 or sy == 0:
        return float("nan")
    return float(np.clip((dx @ dy) / (sx * sy), -1.0, 1.0))


def rank_and_correlate(vs: list[CentralityVector], k: int = 10) -> Ranking:
    if len({len(v.values) for v in vs}) > 1:
        raise ValueError("centrality vectors must have equal length")
    names = [v.measure for v in vs]
    corr = np.array([[pearson(a.values, b.values) for b in vs] for a in vs])
    return Ranking(names, {v.measure: top_k(v, k) for v in vs}, corr)
