"""Spherical geometry of triangle subgraphs.

Areas use the spherical excess from L'Huilier's theorem on great-circle side
lengths. The default sphere radius is the mean Earth radius expressed in
nautical miles (6371.0088 km / 1.852): this is the scale on which the
published airline triangle areas are reported, e.g. BWI-DEN-LAS at about
87,754 square units. Pass ``radius=EARTH_RADIUS_MILES`` for statute miles.

A triangle's centre is the mean of its vertices' latitudes and longitudes
(longitudes unwrapped around their circular mean, so triangles straddling
the antimeridian are handled).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .classes import TRIANGLE
from .enumeration import enumerate_instances
from .graph import Graph

EARTH_RADIUS_KM = 6371.0088
EARTH_RADIUS_MILES = 3958.7613
EARTH_RADIUS_NMI = EARTH_RADIUS_KM / 1.852
DEFAULT_RADIUS = EARTH_RADIUS_NMI


class DegenerateTriangleError(ValueError):
    pass


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self):
        if not -90 <= self.lat <= 90:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180 < self.lon <= 180:
            raise ValueError(f"longitude {self.lon} outside (-180, 180]")

    def unit_vector(self) -> np.ndarray:
        la, lo = math.radians(self.lat), math.radians(self.lon)
        return np.array([math.cos(la) * math.cos(lo), math.cos(la) * math.sin(lo), math.sin(la)])


def _wrap_lon(lon: float) -> float:
    lon = math.fmod(lon + 180.0, 360.0)
    if lon <= 0:
        lon += 360.0
    return lon - 180.0


@dataclass(frozen=True)
class TriangleGeometry:
    labels: tuple[str, str, str]
    area: float
    center: GeoPoint

    def to_record(self) -> dict:
        return {"label1": self.labels[0], "label2": self.labels[1], "label3": self.labels[2],
                "lat": self.center.lat, "lon": self.center.lon, "area_sqmi": self.area}


def gc_distance(p: GeoPoint, q: GeoPoint, radius: float = DEFAULT_RADIUS) -> float:
    """Haversine great-circle distance."""
    la1, la2 = math.radians(p.lat), math.radians(q.lat)
    dla = la2 - la1
    dlo = math.radians(q.lon - p.lon)
    h = math.sin(dla / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin(dlo / 2) ** 2
    return 2 * radius * math.asin(min(1.0, math.sqrt(h)))


def _central_angle(u: np.ndarray, v: np.ndarray) -> float:
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(u @ v))


def spherical_excess(p: GeoPoint, q: GeoPoint, r: GeoPoint) -> float:
    """Spherical excess (steradians on the unit sphere) via L'Huilier."""
    u, v, w = p.unit_vector(), q.unit_vector(), r.unit_vector()
    a, b, c = sorted((_central_angle(v, w), _central_angle(u, w), _central_angle(u, v)))
    s = (a + b + c) / 2
    prod = (math.tan(s / 2) * math.tan((s - a) / 2)
            * math.tan((s - b) / 2) * math.tan((s - c) / 2))
    return 4 * math.atan(math.sqrt(max(prod, 0.0)))


def mean_center(points: Sequence[GeoPoint]) -> GeoPoint:
    """Mean latitude/longitude, longitudes unwrapped around their circular mean."""
    vec = sum(p.unit_vector() for p in points)
    if np.linalg.norm(vec) < 1e-12:
        raise DegenerateTriangleError("degenerate triangle: vertices balance on the sphere")
    ref = math.degrees(math.atan2(
        math.fsum(math.sin(math.radians(p.lon)) for p in points),
        math.fsum(math.cos(math.radians(p.lon)) for p in points)))
    lons = [ref + _wrap_lon(p.lon - ref) for p in points]
    lat = math.fsum(p.lat for p in points) / len(points)
    return GeoPoint(lat, _wrap_lon(math.fsum(lons) / len(points)))


def triangle_geometry(p: GeoPoint, q: GeoPoint, r: GeoPoint,
                      labels: tuple[str, str, str] = ("", "", ""),
                      radius: float = DEFAULT_RADIUS) -> TriangleGeometry:
    area = spherical_excess(p, q, r) * radius ** 2
    return TriangleGeometry(labels, area, mean_center([p, q, r]))


def spatial_census(g: Graph, coords: Mapping[str, GeoPoint],
                   radius: float = DEFAULT_RADIUS) -> list[TriangleGeometry]:
    """Geometry of every triangle in ``g``, in instance order."""
    tris = enumerate_instances(g, TRIANGLE, "nested")
    needed = sorted({g.labels[i] for t in tris for i in t.nodes})
    missing = [lab for lab in needed if lab not in coords]
    if missing:
        raise KeyError(f"missing coordinates for: {', '.join(missing)}")
    out = []
    for t in tris:
        labs = tuple(g.labels[i] for i in t.nodes)
        out.append(triangle_geometry(*(coords[lab] for lab in labs), labels=labs, radius=radius))
    return out


@dataclass(frozen=True)
class DensityCurve:
    x: np.ndarray
    f: np.ndarray
    bandwidth: float


def silverman_bandwidth(values) -> float:
    x = np.asarray(values, dtype=float)
    sd = x.std(ddof=1)
    q75, q25 = np.percentile(x, [75, 25])
    spread = min(sd, (q75 - q25) / 1.34) if q75 > q25 else sd
    return 0.9 * spread * len(x) ** (-0.2)


def kde(values, bandwidth: float | None = None, points: int = 512) -> DensityCurve:
    """Gaussian kernel density estimate on a grid spanning the data +/- 3h.

    No boundary correction is applied, so mass can leak below zero for
    positive data such as areas.
    """
    x = np.asarray(values, dtype=float)
    if len(x) < 2:
        raise ValueError("kde needs at least two values")
    if bandwidth is None:
        if x.std() == 0:
            raise ValueError("zero-variance data: pass an explicit bandwidth")
        bandwidth = silverman_bandwidth(x)
    if not bandwidth > 0:
        raise ValueError("bandwidth must be positive")
    grid = np.linspace(x.min() - 3 * bandwidth, x.max() + 3 * bandwidth, points)
    u = (grid[:, None] - x[None, :]) / bandwidth
    f = np.exp(-0.5 * u ** 2).sum(axis=1) / (len(x) * bandwidth * math.sqrt(2 * math.pi))
    return DensityCurve(grid, f, float(bandwidth))
