import csv
import io
import json

import numpy as np
import pytest

from netmotifs import (GeoPoint, PeriodSeries, PipelineConfig, build_graph, complete_graph,
                       emit_reports, run_pipeline)
from netmotifs.cli import main
from netmotifs.nulls import sample_gnp_connected
from netmotifs.scaling import RegimeModelSpec, regime_model_build


def series_of(*graphs, coords=None):
    return PeriodSeries(tuple((f"P{i:02d}", g) for i, g in enumerate(graphs)), coords)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_demo_inputs(tmp_path):
    rng = np.random.default_rng(3)
    labels = [f"N{i:02d}" for i in range(12)]
    lines = ["period,src,dst"]
    for q, p in (("2001Q1", 0.35), ("2001Q2", 0.4)):
        for i in range(12):
            for j in range(i + 1, 12):
                if j == i + 1 or rng.random() < p:
                    lines.append(f"{q},{labels[i]},{labels[j]}")
    (tmp_path / "edges.csv").write_text("\n".join(lines) + "\n")
    rows = ["label,lat_deg,lon_deg"] + [
        f"{lab},{rng.uniform(30, 45):.3f},{rng.uniform(-120, -75):.3f}" for lab in labels]
    (tmp_path / "airports.csv").write_text("\n".join(rows) + "\n")
    return tmp_path / "edges.csv", tmp_path / "airports.csv"


def test_k4_census_only(tmp_path):
    b = run_pipeline(series_of(complete_graph(4)), PipelineConfig(stages=("census",), seed=1))
    assert b.periods[0].census.core_tuple() == (12, 4, 4, 12, 12, 3, 6, 1)
    files = {p.name for p in emit_reports(b, tmp_path)}
    assert {"manifest.json", "census.csv", "P00.json"} == files
    row = read_csv(tmp_path / "census.csv")[0]
    assert row["M_63_4"] == "1" and row["Mt_3_3"] == "0"


def test_identical_periods_churn():
    g = complete_graph(5)
    b = run_pipeline(series_of(g, g), PipelineConfig(stages=("metrics",), seed=1))
    assert b.churn[0]["added_pct"] == 0 and b.churn[0]["lost_pct"] == 0


def test_regime_series_scaling():
    spec = RegimeModelSpec(20, 30)
    graphs = regime_model_build(spec)[2:]  # l = 4..30
    b = run_pipeline(series_of(*graphs), PipelineConfig(stages=("scaling",), seed=1))
    fit = b.fits["M_3_3"]
    assert fit.slope == pytest.approx(1.56, abs=0.02)
    assert fit.r2 == pytest.approx(0.983, abs=0.005)


def test_spatial_rows_match_triangles(tmp_path):
    labs = [f"{i}" for i in range(6)]
    coords = {lab: GeoPoint(30 + i, -110 + 5 * i) for i, lab in enumerate(labs)}
    g1 = sample_gnp_connected(6, 0.6, seed=1)
    g2 = complete_graph(6)
    b = run_pipeline(series_of(g1, g2, coords=coords),
                     PipelineConfig(stages=("census", "spatial"), seed=1))
    emit_reports(b, tmp_path)
    rows = read_csv(tmp_path / "triangles_geo.csv")
    total = sum(p.census["M_7_3"] for p in b.periods)
    assert len(rows) == total
    assert set(rows[0]) == {"period", "label1", "label2", "label3", "lat", "lon", "area_sqmi"}
    kde_rows = read_csv(tmp_path / "kde_area.csv")
    assert len(kde_rows) == 512 * sum(p.area_density is not None for p in b.periods)


def test_period_failure_is_recorded():
    bad = build_graph([("a", "b"), ("c", "d")])
    good = sample_gnp_connected(8, 0.5, seed=0)
    cfg = PipelineConfig(stages=("census", "motifs"), nulls=("gnp",), replications=5, bootstrap=2,
                         seed=3)
    b = run_pipeline(series_of(good, bad), cfg)
    assert b.periods[0].ok and not b.periods[1].ok
    assert b.errors[0]["period"] == "P01" and b.errors[0]["stage"] == "motifs:gnp"
    assert b.manifest["errors"] == b.errors


def test_seed_generated_and_recorded():
    b = run_pipeline(series_of(complete_graph(4)), PipelineConfig(stages=("census",)))
    assert b.seed_generated and b.manifest["seed"] == b.seed


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(stages=("census", "plots"))
    with pytest.raises(ValueError):
        PipelineConfig(nulls=("configuration",))
    cfg = PipelineConfig(classes=("cricket", "Mt_30_4", "triangle"))
    assert cfg.census_extras() == ("M_79_5",)
    assert cfg.scan_keys() == ("Mt_30_4", "M_7_3")


def test_unwritable_output(tmp_path):
    target = tmp_path / "file"
    target.write_text("x")
    b = run_pipeline(series_of(complete_graph(4)), PipelineConfig(stages=("census",), seed=1))
    with pytest.raises(OSError):
        emit_reports(b, target)


def test_cli_pipeline_deterministic(tmp_path):
    e, a = write_demo_inputs(tmp_path)
    args = ["pipeline", str(e), "--airports", str(a), "--seed", "11", "--null", "gnp",
            "--null", "rewire", "--replications", "30", "--bootstrap", "5"]
    assert main(args + ["--out", str(tmp_path / "r1")]) == 0
    assert main(args + ["--out", str(tmp_path / "r2")]) == 0
    files = sorted(p.relative_to(tmp_path / "r1") for p in (tmp_path / "r1").rglob("*") if p.is_file())
    assert len(files) > 10
    for f in files:
        if f.name != "manifest.json":
            assert (tmp_path / "r1" / f).read_bytes() == (tmp_path / "r2" / f).read_bytes(), f
    m1 = json.loads((tmp_path / "r1" / "manifest.json").read_text())
    assert m1["seed"] == 11 and not m1["seed_generated"]
    z = read_csv(tmp_path / "r1" / "zscores.csv")
    assert {r["ensemble"].split("(")[0] for r in z} == {"gnp", "rewire"}


def test_cli_verbs(tmp_path):
    e, a = write_demo_inputs(tmp_path)
    assert main(["census", str(e), "--out", str(tmp_path / "c"), "--classes", "5-star,cricket"]) == 0
    assert "M_79_5" in read_csv(tmp_path / "c" / "census.csv")[0]
    assert main(["scaling", str(e), "--out", str(tmp_path / "s")]) == 0
    assert read_csv(tmp_path / "s" / "scaling.csv")
    assert main(["centrality", str(e), "--out", str(tmp_path / "k"), "--top-k", "3"]) == 0
    rows = read_csv(tmp_path / "k" / "centrality.csv")
    assert len(rows) == 2 * 5 * 3  # periods x measures x k
    assert main(["spatial", str(e), "--airports", str(a), "--out", str(tmp_path / "g")]) == 0
    assert main(["motifs", str(e), "--null", "anneal", "--replications", "4", "--bootstrap", "2",
                 "--seed", "5", "--out", str(tmp_path / "m")]) == 0
    assert len(read_csv(tmp_path / "m" / "zscores.csv")) == 2 * 6


def test_cli_errors(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("period,src,dst\nQ1,A,A\n")
    assert main(["census", str(bad), "--out", str(tmp_path / "o")]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["errors"][0]["line"] == 2
    split = tmp_path / "split.csv"
    split.write_text("period,src,dst\nQ1,A,B\nQ1,C,D\n")
    assert main(["motifs", str(split), "--null", "gnp", "--replications", "3",
                 "--out", str(tmp_path / "o2")]) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["errors"][0]["stage"] == "motifs:gnp"
