"""
Geography of triangles
======================

Every triangle of a route network becomes a spherical triangle with an area
and a center; the areas are summarized by a kernel density estimate.
"""
import numpy as np

from netmotifs import GeoPoint, build_graph, kde, spatial_census, triangle_geometry

# %%
# Baltimore, Denver and Las Vegas.
t = triangle_geometry(GeoPoint(39.18, -76.67), GeoPoint(39.86, -104.67), GeoPoint(36.08, -115.17),
                      labels=("BWI", "DEN", "LAS"))
print(f"area {t.area:,.0f}, center ({t.center.lat:.2f}, {t.center.lon:.2f})")

# %%
# A synthetic network over random continental locations.
rng = np.random.default_rng(8)
labels = [f"S{i:02d}" for i in range(25)]
coords = {lab: GeoPoint(rng.uniform(26, 48), rng.uniform(-123, -70)) for lab in labels}
edges = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:] if rng.random() < 0.2]
g = build_graph(edges)
tris = spatial_census(g, coords)
areas = np.array([x.area for x in tris])
print(len(tris), "triangles; median area", f"{np.median(areas):,.0f}")

# %%
d = kde(areas)
print(f"bandwidth {d.bandwidth:,.0f}; density mode near {d.x[np.argmax(d.f)]:,.0f}")
