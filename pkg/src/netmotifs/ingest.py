"""CSV ingestion of per-period edge lists and airport coordinates."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import Mapping, TextIO

from .geo import GeoPoint
from .graph import Graph, GraphError, build_graph

EDGE_HEADER = ("period", "src", "dst")
AIRPORT_HEADER = ("label", "lat_deg", "lon_deg")


class IngestError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = ""):
        self.line = line
        self.source = source
        where = f"{source}:" if source else ""
        where += f"line {line}: " if line is not None else (" " if source else "")
        super().__init__(f"{where}{message}")

    def to_record(self) -> dict:
        return {"source": self.source, "line": self.line, "error": str(self)}


@dataclass(frozen=True)
class PeriodSeries:
    """Ordered (label, Graph) pairs plus an optional coordinate table."""
    periods: tuple[tuple[str, Graph], ...]
    coords: Mapping[str, GeoPoint] | None = None
    source: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = [p for p, _ in self.periods]
        if len(set(labels)) != len(labels):
            raise IngestError("duplicate period labels")

    @property
    def labels(self) -> list[str]:
        return [p for p, _ in self.periods]

    def __len__(self):
        return len(self.periods)

    def __getitem__(self, label: str) -> Graph:
        for p, g in self.periods:
            if p == label:
                return g
        raise KeyError(label)

    def with_coords(self, coords: Mapping[str, GeoPoint]) -> "PeriodSeries":
        return PeriodSeries(self.periods, dict(coords), self.source, self.meta)


def _open(src) -> tuple[TextIO, str, bool]:
    if isinstance(src, (str, os.PathLike)):
        return open(src, newline="", encoding="utf-8"), os.fspath(src), True
    return src, getattr(src, "name", ""), False


def _rows(src, header: tuple[str, ...]):
    """Yield (line_number, fields) after validating the header."""
    fh, name, close = _open(src)
    try:
        text = fh.read()
    finally:
        if close:
            fh.close()
    reader = csv.reader(io.StringIO(text))
    first = None
    for row in reader:
        if any(c.strip() for c in row):
            first = row
            break
    if first is None:
        raise IngestError("no data", source=name)
    got = tuple(c.strip().lower() for c in first)
    if got != header:
        raise IngestError(f"unknown header {','.join(first)!r}; expected {','.join(header)!r}",
                          reader.line_num, name)
    any_rows = False
    for row in reader:
        if not any(c.strip() for c in row):
            continue
        any_rows = True
        if len(row) != len(header):
            raise IngestError(f"expected {len(header)} fields, got {len(row)}", reader.line_num, name)
        yield reader.line_num, [c.strip() for c in row], name
    if not any_rows:
        raise IngestError("no data", source=name)


def parse_edges(src) -> PeriodSeries:
    """Read ``period,src,dst`` rows into one graph per period.

    Reversed and repeated rows collapse to one undirected edge. Periods are
    ordered by label.
    """
    by_period: dict[str, list[tuple[str, str]]] = {}
    name = ""
    for line, (period, a, b), name in _rows(src, EDGE_HEADER):
        if not period or not a or not b:
            raise IngestError("empty field", line, name)
        if a == b:
            raise IngestError(f"self-loop on {a!r}", line, name)
        by_period.setdefault(period, []).append((a, b))
    periods = []
    for p in sorted(by_period):
        try:
            periods.append((p, build_graph(by_period[p])))
        except GraphError as exc:
            raise IngestError(f"period {p!r}: {exc}", source=name) from exc
    return PeriodSeries(tuple(periods), source=name)


def parse_airports(src) -> dict[str, GeoPoint]:
    """Read ``label,lat_deg,lon_deg`` rows; identical repeats are tolerated."""
    out: dict[str, GeoPoint] = {}
    for line, (label, lat, lon), name in _rows(src, AIRPORT_HEADER):
        if not label:
            raise IngestError("empty label", line, name)
        try:
            pt = GeoPoint(float(lat), float(lon))
        except ValueError as exc:
            raise IngestError(str(exc), line, name) from exc
        if label in out and out[label] != pt:
            raise IngestError(f"conflicting coordinates for {label!r}", line, name)
        out[label] = pt
    return out
