"""Per-period orchestration of the full analysis and report emission."""
from __future__ import annotations

import csv
import datetime as _dt
import json
import math
import os
import platform
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .census import CensusReport, census
from .centrality import (CentralityVector, Ranking, degree_centrality, membership_centrality,
                         rank_and_correlate, subgraph_centrality_estrada)
from .classes import get_class
from .geo import DensityCurve, TriangleGeometry, kde, spatial_census
from .graph import GraphMetrics, edge_churn, global_metrics
from .ingest import PeriodSeries
from .nulls import COUNT_KEYS, KINDS, EnsembleSpec, ZScoreReport, motif_scan
from .scaling import RegressionFit, loglog_fit

STAGES = ("metrics", "census", "motifs", "centrality", "spatial", "scaling")
DEFAULT_MEMBERSHIP = (("M_7_3", "nested"), ("M_30_4", "non-nested"), ("M_63_4", "nested"))


@dataclass(frozen=True)
class PipelineConfig:
    stages: tuple[str, ...] = STAGES
    seed: int | None = None  # None -> drawn fresh and recorded in the manifest
    nulls: tuple[str, ...] = ()
    replications: int = 1000
    bootstrap: int = 100
    rewire_steps: int | None = None
    classes: tuple[str, ...] = ()  # 5/6-node census extras and/or motif scan keys
    membership: tuple[tuple[str, str], ...] = DEFAULT_MEMBERSHIP
    top_k: int = 10
    kde_points: int = 512
    workers: int = 1  # periods in parallel
    null_workers: int = 1  # replications in parallel, within a period

    def __post_init__(self):
        bad = [s for s in self.stages if s not in STAGES]
        if bad:
            raise ValueError(f"unknown stages {bad}")
        bad = [k for k in self.nulls if k not in KINDS]
        if bad:
            raise ValueError(f"unknown null kinds {bad}; choose from {KINDS}")
        for c in self.classes:
            _class_key(c)

    def census_extras(self) -> tuple[str, ...]:
        return tuple(k for k in map(_class_key, self.classes) if get_class(k).b >= 5)

    def scan_keys(self) -> tuple[str, ...] | None:
        keys = []
        for c in self.classes:
            k = _class_key(c)
            cls = get_class(k)
            if cls.b >= 5:
                continue
            keys.append(k if k in COUNT_KEYS else cls.nonnested_key)
        return tuple(keys) or None


def _class_key(spec: str) -> str:
    """Normalize a class spec to an M_/Mt_ key (names map to the nested key)."""
    if isinstance(spec, str) and spec.startswith("Mt_"):
        get_class(spec)
        return spec
    return get_class(spec).key


def derive_seed(master: int, *key: int) -> int:
    ss = np.random.SeedSequence(master, spawn_key=(2, *key))
    return int(ss.generate_state(1, np.uint64)[0])


def fresh_seed() -> int:
    return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])


@dataclass
class PeriodReport:
    label: str
    n: int
    m: int
    metrics: GraphMetrics | None = None
    census: CensusReport | None = None
    zscores: dict[str, ZScoreReport] = field(default_factory=dict)
    centrality: list[CentralityVector] = field(default_factory=list)
    ranking: Ranking | None = None
    triangles: list[TriangleGeometry] | None = None
    area_density: DensityCurve | None = None
    notes: list[str] = field(default_factory=list)
    error: dict | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class ReportBundle:
    config: PipelineConfig
    seed: int
    seed_generated: bool
    periods: list[PeriodReport]
    churn: list[dict]
    scaling_points: dict[str, list[tuple[str, int, int]]]
    fits: dict[str, RegressionFit]
    manifest: dict

    @property
    def errors(self) -> list[dict]:
        return [p.error for p in self.periods if p.error is not None]


def _analyze_period(args) -> PeriodReport:
    idx, label, g, coords, cfg, seed = args
    rep = PeriodReport(label, g.n, g.m)
    stage = "setup"
    try:
        if "metrics" in cfg.stages:
            stage = "metrics"
            rep.metrics = global_metrics(g)
        if "census" in cfg.stages or "scaling" in cfg.stages:
            stage = "census"
            rep.census = census(g, cfg.census_extras())
        if "motifs" in cfg.stages:
            for k_idx, kind in enumerate(cfg.nulls):
                stage = f"motifs:{kind}"
                spec = EnsembleSpec(kind=kind, replications=cfg.replications,
                                    bootstrap=cfg.bootstrap, master_seed=derive_seed(seed, idx, k_idx),
                                    rewire_steps=cfg.rewire_steps, workers=cfg.null_workers)
                rep.zscores[kind] = motif_scan(g, spec, cfg.scan_keys())
        if "centrality" in cfg.stages:
            stage = "centrality"
            vs = [degree_centrality(g), subgraph_centrality_estrada(g)]
            vs += [membership_centrality(g, c, mode) for c, mode in cfg.membership]
            rep.centrality = vs
            rep.ranking = rank_and_correlate(vs, cfg.top_k)
        if "spatial" in cfg.stages and coords is not None:
            stage = "spatial"
            rep.triangles = spatial_census(g, coords)
            areas = [t.area for t in rep.triangles]
            if len(areas) < 2 or np.ptp(areas) == 0:
                rep.notes.append("area density skipped: fewer than two distinct areas")
            else:
                rep.area_density = kde(areas, points=cfg.kde_points)
    except Exception as exc:  # noqa: BLE001 - recorded, the run continues
        rep.error = {"period": label, "stage": stage, "type": type(exc).__name__,
                     "error": str(exc)}
    return rep


def run_pipeline(series: PeriodSeries, config: PipelineConfig = PipelineConfig()) -> ReportBundle:
    """Analyze every period; a failing period is recorded and skipped."""
    generated = config.seed is None
    seed = fresh_seed() if generated else int(config.seed)
    jobs = [(i, label, g, series.coords, config, seed)
            for i, (label, g) in enumerate(series.periods)]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(config.workers) as ex:
            periods = list(ex.map(_analyze_period, jobs))
    else:
        periods = [_analyze_period(j) for j in jobs]

    churn = []
    for (p0, g0), (p1, g1) in zip(series.periods, series.periods[1:]):
        added, lost = edge_churn(g0, g1)
        churn.append({"period": p1, "previous": p0, "added_pct": added, "lost_pct": lost})

    points: dict[str, list[tuple[str, int, int]]] = {}
    fits: dict[str, RegressionFit] = {}
    if "scaling" in config.stages:
        good = [p for p in periods if p.ok and p.census is not None]
        keys = list(good[0].census.nested) + list(good[0].census.nonnested) if good else []
        for k in keys:
            points[k] = [(p.label, p.m, p.census[k]) for p in good]
            try:
                fits[k] = loglog_fit([(m, c) for _, m, c in points[k]])
            except ValueError:
                pass  # too few usable points; the raw series is still emitted

    manifest = {
        "tool": "netmotifs",
        "version": __version__,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "seed": seed,
        "seed_generated": generated,
        "config": asdict(config) | {"seed": seed},
        "versions": {"python": platform.python_version(), "numpy": np.__version__,
                     "scipy": scipy.__version__},
        "source": series.source,
        "periods": series.labels,
        "coordinates": series.coords is not None,
        "errors": [p.error for p in periods if p.error is not None],
    }
    return ReportBundle(config, seed, generated, periods, churn, points, fits, manifest)


# -- emission -----------------------------------------------------------------

def _plain(x):
    """JSON-safe conversion: numpy scalars, Fractions, NaN -> None."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating, Fraction)):
        f = float(x)
        return f if math.isfinite(f) else None
    return x


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x)) if math.isfinite(x) else ""
    return str(x)


def _write_csv(path: Path, header: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r.get(h)) for h in header])


def _safe(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", label)


def period_record(p: PeriodReport) -> dict:
    rec: dict = {"period": p.label, "n": p.n, "m": p.m, "error": p.error, "notes": p.notes}
    if p.metrics:
        rec["metrics"] = p.metrics.to_record()
    if p.census:
        rec["census"] = {"nested": p.census.nested, "nonnested": p.census.nonnested}
    if p.zscores:
        rec["zscores"] = {k: {"replications_used": z.replications_used, "discarded": z.discarded,
                              "disconnected": z.disconnected, "rows": z.to_records()}
                          for k, z in p.zscores.items()}
    if p.ranking:
        rec["centrality"] = {
            "measures": p.ranking.measures,
            "params": {v.measure: v.params for v in p.centrality},
            "values": {v.measure: dict(zip(v.labels, v.values)) for v in p.centrality},
            "top": p.ranking.to_records(),
            "correlation": p.ranking.correlation,
        }
    if p.triangles is not None:
        rec["triangles"] = [t.to_record() for t in p.triangles]
        if p.area_density:
            rec["area_bandwidth"] = p.area_density.bandwidth
    return _plain(rec)


def _svg_loglog(key: str, pts: list[tuple[str, int, int]], fit: RegressionFit) -> str:
    """Scatter of (ln m, ln count) with the fitted line, fixed-precision text."""
    xy = [(math.log(m), math.log(c)) for _, m, c in pts if c > 0]
    w, h, pad = 480, 360, 48
    xs, ys = [x for x, _ in xy], [y for _, y in xy]
    x0, x1 = min(xs), max(xs)
    line = [fit.intercept + fit.slope * x for x in (x0, x1)]
    y0, y1 = min(ys + line), max(ys + line)
    sx = (w - 2 * pad) / ((x1 - x0) or 1.0)
    sy = (h - 2 * pad) / ((y1 - y0) or 1.0)

    def px(x, y):
        return f"{pad + (x - x0) * sx:.2f}", f"{h - pad - (y - y0) * sy:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">',
           f'<rect width="{w}" height="{h}" fill="white"/>',
           f'<line x1="{pad}" y1="{h - pad}" x2="{w - pad}" y2="{h - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{h - pad}" stroke="black"/>']
    for x, y in xy:
        cx, cy = px(x, y)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="steelblue"/>')
    (ax, ay), (bx, by) = px(x0, line[0]), px(x1, line[1])
    out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="firebrick"/>')
    out.append(f'<text x="{w / 2:.0f}" y="{h - 12}" text-anchor="middle" font-size="12">ln m</text>')
    out.append(f'<text x="14" y="{h / 2:.0f}" font-size="12" '
               f'transform="rotate(-90 14 {h / 2:.0f})" text-anchor="middle">ln {key}</text>')
    out.append(f'<text x="{w - pad}" y="{pad - 12}" text-anchor="end" font-size="12">'
               f'beta={fit.slope:.4f} R2={fit.r2:.4f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_reports(bundle: ReportBundle, out_dir, svg: bool = True) -> list[Path]:
    """Write manifest, per-period JSON and the CSV series; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise PermissionError(f"cannot write to {out}")
    cfg = bundle.config
    written: list[Path] = []
    good = [p for p in bundle.periods if p.ok]

    (out / "periods").mkdir(exist_ok=True)
    for p in bundle.periods:
        path = out / "periods" / f"{_safe(p.label)}.json"
        path.write_text(json.dumps(period_record(p), indent=2, sort_keys=True) + "\n")
        written.append(path)

    def emit(name, header, rows):
        _write_csv(out / name, header, rows)
        written.append(out / name)

    if "metrics" in cfg.stages:
        churn = {c["period"]: c for c in bundle.churn}
        rows = [{"period": p.label, "n": p.n, "m": p.m, **p.metrics.to_record(),
                 "added_pct": churn.get(p.label, {}).get("added_pct"),
                 "lost_pct": churn.get(p.label, {}).get("lost_pct")}
                for p in bundle.periods if p.metrics is not None]
        emit("metrics.csv", ["period", "n", "m", "density", "diameter", "average_path_length",
                             "clustering_overall", "clustering_average", "connected",
                             "added_pct", "lost_pct"], rows)
    if "census" in cfg.stages:
        with_census = [p for p in good if p.census is not None]
        cols = list(with_census[0].census.to_record()) if with_census else ["n", "m"]
        emit("census.csv", ["period"] + cols,
             [{"period": p.label, **p.census.to_record()} for p in with_census])
    if "motifs" in cfg.stages and cfg.nulls:
        rows = [{"period": p.label, **r} for p in good
                for k in cfg.nulls if k in p.zscores for r in p.zscores[k].to_records()]
        emit("zscores.csv", ["period", "class", "observed", "mu", "sigma", "z", "p_emp",
                             "p_boot", "verdict", "ensemble", "seed"], rows)
    if "centrality" in cfg.stages:
        rows = [{"period": p.label, **r} for p in good if p.ranking for r in p.ranking.to_records()]
        emit("centrality.csv", ["period", "measure", "rank", "label", "value"], rows)
    if "spatial" in cfg.stages and any(p.triangles is not None for p in good):
        rows = [{"period": p.label, **t.to_record()} for p in good if p.triangles for t in p.triangles]
        emit("triangles_geo.csv", ["period", "label1", "label2", "label3", "lat", "lon",
                                   "area_sqmi"], rows)
        rows = [{"period": p.label, "x": x, "f": f} for p in good if p.area_density
                for x, f in zip(p.area_density.x, p.area_density.f)]
        emit("kde_area.csv", ["period", "x", "f"], rows)
    if "scaling" in cfg.stages:
        emit("scaling.csv", ["class", "A", "beta", "R2", "n_points"],
             [f.to_record(k) for k, f in bundle.fits.items()])
        emit("scaling_points.csv", ["class", "period", "m", "count"],
             [{"class": k, "period": lab, "m": m, "count": c}
              for k, pts in bundle.scaling_points.items() for lab, m, c in pts])
        if bundle.churn:
            emit("churn.csv", ["period", "previous", "added_pct", "lost_pct"], bundle.churn)
        if svg:
            for k, fit in bundle.fits.items():
                path = out / f"scaling_{k}.svg"
                path.write_text(_svg_loglog(k, bundle.scaling_points[k], fit))
                written.append(path)

    manifest = dict(bundle.manifest)
    manifest["files"] = sorted(str(p.relative_to(out)) for p in written)
    path = out / "manifest.json"
    path.write_text(json.dumps(_plain(manifest), indent=2, sort_keys=True) + "\n")
    written.append(path)
    return written
