"""Power-law scaling of subgraph counts against the number of edges.

Fits ``log count = alpha + beta log m`` by ordinary least squares (natural
logs throughout), plus the small amount of theory needed to interpret the
slope: implied slopes for G(n, p), a star/complete regime-switching growth
model with closed-form counts, and the edge count beyond which a fitted
triangle or 4-complete law would violate the clique-number bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Literal

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class RegressionFit:
    intercept: float  # alpha = ln A
    slope: float  # beta
    r2: float
    n_points: int
    residuals: np.ndarray
    excluded: int = 0  # zero counts dropped before the fit

    @property
    def A(self) -> float:
        return math.exp(self.intercept)

    def to_record(self, cls: str = "") -> dict:
        return {"class": cls, "A": self.A, "beta": self.slope, "R2": self.r2,
                "n_points": self.n_points}


def loglog_fit(points: Iterable[tuple[float, float]]) -> RegressionFit:
    """OLS of ln(count) on a constant and ln(m).

    Points with a zero count are dropped and reported in ``excluded``. When
    the counts do not vary at all, R^2 is taken as 1.
    """
    pts = list(points)
    keep = [(m, c) for m, c in pts if c > 0]
    if any(m <= 0 for m, _ in keep):
        raise ValueError("edge counts must be positive")
    if len({m for m, _ in keep}) < 2:
        raise ValueError("need at least two distinct m values with positive counts")
    x = np.log(np.array([m for m, _ in keep], dtype=float))
    y = np.log(np.array([c for _, c in keep], dtype=float))
    X = np.column_stack([np.ones_like(x), x])
    (alpha, beta), *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - (alpha + beta * x)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0:
        r2 = 1.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return RegressionFit(float(alpha), float(beta), r2, len(keep), resid, len(pts) - len(keep))


def er_implied_slope(b: int) -> Fraction:
    """Slope of ln E(count) on ln E(m) for b-node subgraphs in G(n, p), fixed p."""
    if b < 3:
        raise ValueError("b must be >= 3")
    return Fraction(b, 2)


# -- regime-switching toy model ------------------------------------------------

@dataclass(frozen=True)
class RegimeModelSpec:
    n_star: int
    n_final: int

    def __post_init__(self):
        if not 2 <= self.n_star < self.n_final:
            raise ValueError("need 2 <= n_star < n_final")


def regime_model_build(spec: RegimeModelSpec) -> list[Graph]:
    """Graphs for l = 2..n_final nodes.

    Up to ``n_star`` nodes every newcomer links to node 0 (a growing star);
    afterwards every newcomer links to all existing nodes.
    """
    n = spec.n_final
    adj = np.zeros((n, n), dtype=bool)
    adj[0, 1] = adj[1, 0] = True
    out = [Graph.from_adjacency(adj[:2, :2])]
    for l in range(3, n + 1):
        new = l - 1
        if l <= spec.n_star:
            adj[0, new] = adj[new, 0] = True
        else:
            adj[new, :new] = adj[:new, new] = True
        out.append(Graph.from_adjacency(adj[:l, :l]))
    return out


def regime_analytic_counts(spec: RegimeModelSpec, l: int) -> tuple[int, int]:
    """Closed-form (m, nested 3-star count) of the l-node toy graph."""
    if l < 2:
        raise ValueError("l must be >= 2")
    ns = spec.n_star
    if l <= ns:
        m = l - 1
        return m, comb(m, 2)
    a = l - ns
    m = Fraction(a + 1) * (ns + Fraction(a, 2) - 1)
    stars = Fraction(a + 1, 2) * (a * (ns - 1) + (ns + a - 1) * (ns + a - 2))
    assert m.denominator == 1 and stars.denominator == 1
    return int(m), int(stars)


def regime_trajectory(spec: RegimeModelSpec, l_min: int = 2) -> list[tuple[int, int]]:
    return [regime_analytic_counts(spec, l) for l in range(l_min, spec.n_final + 1)]


# -- feasibility of constant-slope scaling -------------------------------------

def clique_bound_constant(w: int, subgraph: str = "triangle") -> float:
    """C(w): ln C(w,3) - 1.5 ln C(w,2) (triangle) or ln C(w,4) - 2 ln C(w,2)."""
    if subgraph == "triangle":
        if w < 3:
            raise ValueError("w must be >= 3")
        return math.log(w - 2) - 0.5 * math.log(4.5 * (w - 1) * w)
    if subgraph == "4-complete":
        if w < 4:
            raise ValueError("w must be >= 4")
        return math.log(comb(w, 4)) - 2 * math.log(comb(w, 2))
    raise ValueError(f"unknown subgraph {subgraph!r}")


CLIQUE_BOUND_LIMIT = {"triangle": -0.5 * math.log(4.5), "4-complete": -math.log(6)}
CRITICAL_SLOPE = {"triangle": 1.5, "4-complete": 2.0}


def scaling_feasibility(alpha: float, beta: float,
                        subgraph: Literal["triangle", "4-complete"] = "triangle",
                        w: int | None = None) -> float | None:
    """Edge count m* at which ``alpha + beta ln m`` first exceeds the bound.

    With ``w`` given the clique number is held fixed; with ``w=None`` it grows
    with m and the limiting constant is used. Returns ``None`` (never
    violated) when beta does not exceed the critical slope.
    """
    crit = CRITICAL_SLOPE[subgraph]
    if beta <= crit:
        return None
    c = CLIQUE_BOUND_LIMIT[subgraph] if w is None else clique_bound_constant(w, subgraph)
    return math.exp((c - alpha) / (beta - crit))
