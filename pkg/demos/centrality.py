"""
Node rankings from degree, walks and subgraph membership
========================================================
"""
import numpy as np

from netmotifs import (degree_centrality, membership_centrality, rank_and_correlate,
                       sample_gnp_connected, subgraph_centrality_estrada)
from netmotifs.classes import FOUR_CIRCLE, THREE_STAR, TRIANGLE

g = sample_gnp_connected(40, 0.15, seed=12)

# %%
# Subgraph centrality weights closed walks of length k by 1/k!.
vectors = [
    degree_centrality(g),
    subgraph_centrality_estrada(g),
    membership_centrality(g, THREE_STAR, "non-nested"),
    membership_centrality(g, TRIANGLE, "nested"),
    membership_centrality(g, FOUR_CIRCLE, "non-nested"),
]
r = rank_and_correlate(vectors, k=5)
for name in r.measures:
    print(f"{name:>22s}", [lab for _, lab, _ in r.top[name]])

# %%
# Pearson correlations between the measures.
np.set_printoptions(precision=2, suppress=True)
print(r.correlation)
