"""Randomized null ensembles and z-score motif inference.

Three ensembles are supported:

``gnp``
    Erdos-Renyi G(n, p) with p equal to the observed density, disconnected
    draws rejected. Means come from the closed-form expectations, standard
    deviations from the sample.
``rewire``
    Degree-preserving edge-pair switching started from the observed graph.
``rewire_anneal``
    ``rewire`` followed by simulated annealing over further switches until
    the non-nested 3-star and triangle counts match the observed graph.

Every replication draws from its own Philox stream keyed by
``(master_seed, replication index)``, so results do not depend on the order
or process in which replications run.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Literal, Sequence

import numpy as np

from .census import nested_counts, nonnested_counts, triangle_count
from .classes import CORE_CLASSES
from .graph import Graph, density

log = logging.getLogger(__name__)

Kind = Literal["gnp", "rewire", "rewire_anneal"]
KINDS = ("gnp", "rewire", "rewire_anneal")

SCAN_KEYS = {
    "gnp": ("M_3_3", "Mt_3_3", "M_7_3"),
    "rewire": ("Mt_3_3", "M_7_3"),
    "rewire_anneal": ("Mt_11_4", "Mt_13_4", "Mt_15_4", "Mt_30_4", "Mt_31_4", "Mt_63_4"),
}


class DegenerateNullError(ValueError):
    """The null sample has zero variance, so a z-score is undefined."""


class ConnectivityError(RuntimeError):
    pass


# -- random streams ----------------------------------------------------------

def stream(master_seed: int, *key: int) -> np.random.Generator:
    """Independent Philox generator for ``(master_seed, *key)``."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return stream(seed)


# -- configuration -----------------------------------------------------------

@dataclass(frozen=True)
class AnnealConfig:
    psi_initial: float = 100.0
    stop_energy: float = 1e-5
    max_steps: int = 1_000_000


@dataclass(frozen=True)
class EnsembleSpec:
    kind: Kind = "gnp"
    replications: int = 1000
    bootstrap: int = 100
    master_seed: int = 0
    rewire_steps: int | None = None  # successful switches; None -> 100 m
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    workers: int = 1
    gnp_p: float | None = None  # None -> density of the observed graph

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown null kind {self.kind!r}")
        if self.replications < 2:
            raise ValueError("need at least 2 replications")
        if self.bootstrap < 1:
            raise ValueError("need at least 1 bootstrap replication")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")

    def p_for(self, g: Graph) -> float:
        return density(g) if self.gnp_p is None else self.gnp_p

    def steps_for(self, g: Graph) -> int:
        return 100 * g.m if self.rewire_steps is None else self.rewire_steps

    def describe(self) -> str:
        return f"{self.kind}(R={self.replications}, B={self.bootstrap})"


# -- G(n, p) -----------------------------------------------------------------

_GNP_TABLE = {
    # key: (multiplier as function of n, edges c, nodes b)
    "M_3_3": (lambda n: 3 * comb(n, 3), 2, 3),
    "M_7_3": (lambda n: comb(n, 3), 3, 3),
    "M_11_4": (lambda n: 4 * comb(n, 4), 3, 4),
    "M_13_4": (lambda n: 12 * comb(n, 4), 3, 4),
    "M_15_4": (lambda n: 3 * comb(n, 3) * (n - 3), 4, 4),
    "M_30_4": (lambda n: 3 * comb(n, 4), 4, 4),
    "M_31_4": (lambda n: 6 * comb(n, 4), 5, 4),
    "M_63_4": (lambda n: comb(n, 4), 6, 4),
}


def expected_counts_gnp(n: int, p: float, mode: str = "nested") -> dict[str, float]:
    """Expected subgraph counts in G(n, p).

    Non-nested expectations multiply by ``(1-p)^(b(b-1)/2 - c)``, the
    probability that none of the missing template edges is present.
    """
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if mode not in ("nested", "non-nested"):
        raise ValueError(f"unknown mode {mode!r}")
    out = {}
    for key, (mult, c, b) in _GNP_TABLE.items():
        val = mult(n) * p ** c
        if mode == "non-nested":
            val *= (1 - p) ** (b * (b - 1) // 2 - c)
            key = "Mt" + key[1:]
        out[key] = float(val)
    return out


def sample_gnp(n: int, p: float, seed=None) -> Graph:
    """One G(n, p) draw (not conditioned on connectivity)."""
    rng = _rng(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_adjacency(upper | upper.T)


def sample_gnp_connected(n: int, p: float, seed=None, max_rejections: int = 10_000) -> Graph:
    """Rejection-sample G(n, p) until the draw is connected."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    rng = _rng(seed)
    for _ in range(max_rejections):
        g = sample_gnp(n, p, rng)
        if g.is_connected():
            return g
    raise ConnectivityError(
        f"{max_rejections} consecutive disconnected G({n}, {p}) draws; use a larger p")


# -- degree-preserving rewiring ----------------------------------------------

class _Switcher:
    """Mutable edge-pair switching state over a copy of a graph."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.adj.copy()
        self.edges = [list(e) for e in g.edges()]
        self.m = len(self.edges)
        self._buf: list = []

    def _draws(self, rng):
        if not self._buf:
            size = 4096
            i = rng.integers(self.m, size=size)
            j = rng.integers(self.m - 1, size=size)
            j = j + (j >= i)
            flip = rng.integers(2, size=size)
            self._buf = list(zip(i.tolist(), j.tolist(), flip.tolist()))
            self._buf.reverse()
        return self._buf.pop()

    def propose(self, rng):
        """Draw a random oriented edge pair; return the switch if valid."""
        i, j, flip = self._draws(rng)
        x1, y1 = self.edges[i]
        x2, y2 = self.edges[j]
        if flip:
            x2, y2 = y2, x2
        if len({x1, y1, x2, y2}) < 4:
            return None
        a = self.adj
        if a[x1, y2] or a[x2, y1]:
            return None
        return i, j, x1, y1, x2, y2

    def apply(self, sw):
        i, j, x1, y1, x2, y2 = sw
        a = self.adj
        a[x1, y1] = a[y1, x1] = False
        a[x2, y2] = a[y2, x2] = False
        a[x1, y2] = a[y2, x1] = True
        a[x2, y1] = a[y1, x2] = True
        self.edges[i] = [x1, y2]
        self.edges[j] = [x2, y1]

    def undo(self, sw):
        i, j, x1, y1, x2, y2 = sw
        a = self.adj
        a[x1, y2] = a[y2, x1] = False
        a[x2, y1] = a[y1, x2] = False
        a[x1, y1] = a[y1, x1] = True
        a[x2, y2] = a[y2, x2] = True
        self.edges[i] = [x1, y1]
        self.edges[j] = [x2, y2]

    def graph(self, labels) -> Graph:
        return Graph(labels, self.adj)


def valid_switches(g: Graph) -> list[tuple[int, int, int, int]]:
    """Every valid switch ``(x1, y1, x2, y2)`` by exhaustive scan over
    unordered edge pairs and both orientations of the second edge."""
    a = g.adj
    edges = g.edges()
    out = []
    for p in range(len(edges)):
        x1, y1 = edges[p]
        for q in range(p + 1, len(edges)):
            for x2, y2 in (edges[q], edges[q][::-1]):
                if len({x1, y1, x2, y2}) == 4 and not a[x1, y2] and not a[x2, y1]:
                    out.append((x1, y1, x2, y2))
    return out


def has_valid_switch(g: Graph) -> bool:
    a = g.adj
    edges = g.edges()
    for p in range(len(edges)):
        x1, y1 = edges[p]
        for q in range(p + 1, len(edges)):
            for x2, y2 in (edges[q], edges[q][::-1]):
                if len({x1, y1, x2, y2}) == 4 and not a[x1, y2] and not a[x2, y1]:
                    return True
    return False


@dataclass(frozen=True)
class RewireResult:
    graph: Graph
    switches: int
    attempts: int
    frozen: bool  # True when no valid switch exists; graph is the input

    @property
    def connected(self) -> bool:
        return self.graph.is_connected()


def rewire_chain(g: Graph, successful_switches: int, seed=None,
                 stall_check: int = 5000) -> RewireResult:
    """Apply exactly ``successful_switches`` random degree-preserving switches.

    Rejected proposals do not count. If ``stall_check`` consecutive proposals
    fail, an exhaustive scan decides whether any valid switch exists at all;
    if none does the input is returned with ``frozen=True``.
    """
    rng = _rng(seed)
    if successful_switches <= 0:
        return RewireResult(g, 0, 0, False)
    if g.m < 2:
        return RewireResult(g, 0, 0, True)
    state = _Switcher(g)
    done = attempts = fails = 0
    while done < successful_switches:
        attempts += 1
        sw = state.propose(rng)
        if sw is None:
            fails += 1
            if fails == stall_check and not has_valid_switch(state.graph(g.labels)):
                log.warning("no valid edge-pair switch exists; graph left unchanged")
                return RewireResult(g, 0, attempts, True)
            continue
        fails = 0
        state.apply(sw)
        done += 1
    return RewireResult(state.graph(g.labels), done, attempts, False)


# -- simulated annealing -----------------------------------------------------

def energy(real: Sequence[float], rand: Sequence[float]) -> float:
    """Sum of |r - s| / (r + s); a component with r + s = 0 contributes 0."""
    total = 0.0
    for r, s in zip(real, rand):
        if r + s:
            total += abs(r - s) / (r + s)
    return total


def temperature(t: int, psi_initial: float = 100.0) -> float:
    """Psi(t) with Psi(1) = psi_initial and Psi(t+1) = Psi(t) / ln(t+1)."""
    psi = psi_initial
    for s in range(1, t):
        psi /= math.log(s + 1)
    return psi


@dataclass
class AnnealResult:
    graph: Graph
    converged: bool
    steps: int
    energy: float
    accepted: int = 0
    trace: list[tuple[int, float, float, bool]] | None = None  # (t, E_before, E_after, accepted)


def anneal_match(g_rand: Graph, targets: tuple[int, int], config: AnnealConfig = AnnealConfig(),
                 seed=None, record_trace: bool = False) -> AnnealResult:
    """Switch edge pairs until (non-nested 3-stars, triangles) hit ``targets``.

    One switch is proposed per temperature step. A switch that lowers the
    energy is always kept; otherwise it is kept with probability
    ``exp(-|dE| / Psi(t))``. Stops when energy < ``config.stop_energy`` or
    after ``config.max_steps`` steps, returning the best graph seen.
    """
    rng = _rng(seed)
    a_int = g_rand.int_adj()
    three_stars = int((g_rand.degrees * (g_rand.degrees - 1)).sum()) // 2
    tri = triangle_count(a_int)

    def theta(t):
        return (three_stars - 3 * t, t)

    e = energy(targets, theta(tri))
    trace = [] if record_trace else None
    if e < config.stop_energy:
        return AnnealResult(g_rand, True, 0, e, 0, trace)
    if g_rand.m < 2 or not has_valid_switch(g_rand):
        return AnnealResult(g_rand, False, 0, e, 0, trace)

    state = _Switcher(g_rand)
    adj = state.adj
    best_e, best_adj = e, adj.copy()
    psi = config.psi_initial
    accepted = 0
    t = 0
    for t in range(1, config.max_steps + 1):
        if t > 1:
            psi /= math.log(t)
        sw = None
        while sw is None:
            sw = state.propose(rng)
        _, _, x1, y1, x2, y2 = sw
        # triangle delta, applying the four edge changes one at a time
        adj[x1, y1] = adj[y1, x1] = False
        d = -np.count_nonzero(adj[x1] & adj[y1])
        adj[x2, y2] = adj[y2, x2] = False
        d -= np.count_nonzero(adj[x2] & adj[y2])
        adj[x1, y2] = adj[y2, x1] = True
        d += np.count_nonzero(adj[x1] & adj[y2])
        adj[x2, y1] = adj[y1, x2] = True
        d += np.count_nonzero(adj[x2] & adj[y1])
        # restore, then let apply/undo keep edge bookkeeping consistent
        state.undo(sw)
        new_tri = tri + int(d)
        new_e = energy(targets, theta(new_tri))
        delta = new_e - e
        if delta < 0:
            accept = True
        elif psi > 0:
            accept = rng.random() < math.exp(-abs(delta) / psi)
        else:
            accept = delta == 0
        if record_trace:
            trace.append((t, e, new_e, accept))
        if accept:
            state.apply(sw)
            tri, e = new_tri, new_e
            accepted += 1
            if e < best_e:
                best_e, best_adj = e, adj.copy()
            if e < config.stop_energy:
                return AnnealResult(state.graph(g_rand.labels), True, t, e, accepted, trace)
    return AnnealResult(Graph(g_rand.labels, best_adj), False, t, best_e, accepted, trace)


# -- ensemble statistics -----------------------------------------------------

COUNT_KEYS = tuple(c.key for c in CORE_CLASSES) + tuple(c.nonnested_key for c in CORE_CLASSES)


def _counts(g: Graph) -> dict[str, int]:
    nested = nested_counts(g)
    return {**nested, **nonnested_counts(nested)}


@dataclass(frozen=True)
class Replication:
    index: int
    counts: dict[str, int] | None  # None when discarded
    connected: bool
    note: str = ""


def replicate(g: Graph, spec: EnsembleSpec, index: int, targets=None) -> Replication:
    """Run one replication of the ensemble on its own random stream."""
    rng = stream(spec.master_seed, 0, index)
    if spec.kind == "gnp":
        h = sample_gnp_connected(g.n, spec.p_for(g), rng)
        return Replication(index, _counts(h), True)
    rw = rewire_chain(g, spec.steps_for(g), rng)
    h = rw.graph
    note = "frozen" if rw.frozen else ""
    if spec.kind == "rewire_anneal":
        if targets is None:
            c = _counts(g)
            targets = (c["Mt_3_3"], c["M_7_3"])
        res = anneal_match(h, targets, spec.anneal, rng)
        if not res.converged:
            return Replication(index, None, res.graph.is_connected(), "not converged")
        h = res.graph
    return Replication(index, _counts(h), h.is_connected(), note)


def _replicate_many(args):
    g, spec, indices, targets = args
    return [replicate(g, spec, i, targets) for i in indices]


@dataclass
class NullStats:
    spec: EnsembleSpec
    p: float | None
    samples: dict[str, np.ndarray]
    mu: dict[str, float]
    sigma: dict[str, float]
    mu_exact: dict[str, Fraction]
    discarded: int = 0
    disconnected: int = 0
    frozen: int = 0

    @property
    def used(self) -> int:
        return len(next(iter(self.samples.values()))) if self.samples else 0


def _moments(xs: np.ndarray) -> tuple[Fraction, Fraction]:
    """Exact mean and unbiased variance of integer samples."""
    ints = [int(x) for x in xs]
    r = len(ints)
    s1 = sum(ints)
    s2 = sum(x * x for x in ints)
    mean = Fraction(s1, r)
    var = Fraction(r * s2 - s1 * s1, r * (r - 1)) if r > 1 else Fraction(0)
    return mean, var


def null_ensemble_stats(g: Graph, spec: EnsembleSpec) -> NullStats:
    """Draw ``spec.replications`` null graphs and summarize every core count."""
    c = _counts(g)
    targets = (c["Mt_3_3"], c["M_7_3"])
    indices = list(range(spec.replications))
    if spec.workers > 1:
        chunks = [indices[k::spec.workers] for k in range(spec.workers)]
        with ProcessPoolExecutor(spec.workers) as pool:
            reps = [r for part in pool.map(_replicate_many, [(g, spec, ch, targets) for ch in chunks])
                    for r in part]
    else:
        reps = [replicate(g, spec, i, targets) for i in indices]
    reps.sort(key=lambda r: r.index)
    kept = [r for r in reps if r.counts is not None]
    discarded = len(reps) - len(kept)
    if discarded:
        log.warning("%d of %d replications discarded (annealing did not converge)",
                    discarded, len(reps))
    if len(kept) < 2:
        raise DegenerateNullError("fewer than two usable null replications")
    samples = {k: np.array([r.counts[k] for r in kept], dtype=np.int64) for k in COUNT_KEYS}
    p = None
    mu, mu_exact, sigma = {}, {}, {}
    for k, xs in samples.items():
        mean, var = _moments(xs)
        mu_exact[k] = mean
        mu[k] = float(mean)
        sigma[k] = math.sqrt(var)
    if spec.kind == "gnp":
        p = spec.p_for(g)
        mu = {**expected_counts_gnp(g.n, p, "nested"), **expected_counts_gnp(g.n, p, "non-nested")}
        mu_exact = {}
    return NullStats(spec, p, samples, mu, sigma, mu_exact, discarded,
                     sum(not r.connected for r in kept), sum(r.note == "frozen" for r in kept))


# -- inference ---------------------------------------------------------------

@dataclass(frozen=True)
class ZTest:
    z: float
    p_emp: float
    p_boot: float
    p_boot_band: tuple[float, float]


def _empirical_p(observed, mu, samples) -> float:
    dev = abs(observed - mu)
    hits = int(np.count_nonzero(np.abs(samples - mu) >= dev - 1e-12 * max(1.0, dev)))
    return (1 + hits) / (len(samples) + 1)


def z_and_pvalue(observed: int, mu, sigma: float, samples, B: int = 100, seed=None,
                 resample_mean: bool = True) -> ZTest:
    """z-score plus two-sided empirical and bootstrap p-values.

    ``p_emp = (1 + #{|s_i - mu| >= |observed - mu|}) / (R + 1)``. The
    bootstrap resamples the null sample ``B`` times, recomputes the centre
    (unless ``resample_mean`` is False, e.g. for an analytic mean), and
    reports the median resampled empirical p with a 95% band.
    """
    if not sigma > 0:
        raise DegenerateNullError("degenerate null: zero variance")
    samples = np.asarray(samples, dtype=float)
    if isinstance(mu, Fraction):
        z = float(Fraction(int(observed)) - mu) / sigma
        mu = float(mu)
    else:
        z = (observed - mu) / sigma
    p_emp = _empirical_p(observed, mu, samples)
    rng = _rng(seed)
    ps = np.empty(B)
    for b in range(B):
        res = samples[rng.integers(len(samples), size=len(samples))]
        centre = res.mean() if resample_mean else mu
        ps[b] = _empirical_p(observed, centre, res)
    lo, hi = np.quantile(ps, [0.025, 0.975])
    return ZTest(float(z), p_emp, float(np.median(ps)), (float(lo), float(hi)))


def verdict(z: float | None, threshold: float = 2.0) -> str:
    if z is None:
        return "degenerate"
    if z > threshold:
        return "motif"
    if z < -threshold:
        return "anti-motif"
    return "none"


@dataclass(frozen=True)
class ZRow:
    cls: str
    observed: int
    mu: float
    sigma: float
    z: float | None
    p_emp: float | None
    p_boot: float | None
    verdict: str


@dataclass
class ZScoreReport:
    rows: list[ZRow]
    ensemble: str
    seed: int
    replications_used: int
    discarded: int = 0
    disconnected: int = 0

    def __getitem__(self, cls: str) -> ZRow:
        for r in self.rows:
            if r.cls == cls:
                return r
        raise KeyError(cls)

    def to_records(self) -> list[dict]:
        return [{"class": r.cls, "observed": r.observed, "mu": r.mu, "sigma": r.sigma,
                 "z": r.z, "p_emp": r.p_emp, "p_boot": r.p_boot, "verdict": r.verdict,
                 "ensemble": self.ensemble, "seed": self.seed} for r in self.rows]


def motif_scan(g: Graph, spec: EnsembleSpec, keys: Sequence[str] | None = None,
               stats: NullStats | None = None) -> ZScoreReport:
    """z-scores of the observed counts against the requested null."""
    if not g.is_connected():
        raise ValueError("motif scan requires a connected graph")
    keys = tuple(keys or SCAN_KEYS[spec.kind])
    stats = stats or null_ensemble_stats(g, spec)
    observed = _counts(g)
    rows = []
    for idx, k in enumerate(keys):
        sigma = stats.sigma[k]
        mu_val = stats.mu_exact.get(k, stats.mu[k])
        if sigma > 0:
            t = z_and_pvalue(observed[k], mu_val, sigma, stats.samples[k], spec.bootstrap,
                             stream(spec.master_seed, 1, idx), resample_mean=spec.kind != "gnp")
            rows.append(ZRow(k, observed[k], stats.mu[k], sigma, t.z, t.p_emp, t.p_boot,
                             verdict(t.z)))
        else:
            rows.append(ZRow(k, observed[k], stats.mu[k], sigma, None, None, None, "degenerate"))
    return ZScoreReport(rows, spec.describe(), int(spec.master_seed), stats.used,
                        stats.discarded, stats.disconnected)


def with_seed(spec: EnsembleSpec, seed: int) -> EnsembleSpec:
    return replace(spec, master_seed=seed)
