"""
Growth of subgraph counts with network size
===========================================

Log-log regressions of counts on edge counts, the slopes implied by G(n,p),
and a toy model that switches between growth regimes.
"""
from math import comb

from netmotifs import RegimeModelSpec, er_implied_slope, loglog_fit, scaling_feasibility
from netmotifs.nulls import expected_counts_gnp
from netmotifs.scaling import regime_trajectory

# %%
# In G(n,p) with fixed p, b-node counts grow like m to the power b/2.
for b in (3, 4, 5):
    print(f"b={b}: implied slope {er_implied_slope(b)}")
pts = [(comb(n, 2) * 0.05, expected_counts_gnp(n, 0.05)["M_7_3"]) for n in range(200, 2001, 100)]
print("fitted triangle slope:", round(loglog_fit(pts).slope, 4))

# %%
# The regime model grows hub by hub until n* nodes, then switches pattern.
traj = regime_trajectory(RegimeModelSpec(20, 30), l_min=4)
fit = loglog_fit(traj)
print(f"3-star slope {fit.slope:.4f}, R^2 {fit.r2:.5f}")

# %%
# A triangle count growing as alpha + beta ln m cannot outrun the clique
# bound forever; this is the edge count at which it would.
print(f"m* for alpha=-6, beta=1.8: {scaling_feasibility(-6.0, 1.8, 'triangle', w=11):,.0f} edges")
print("beta=1.4 never hits the bound:", scaling_feasibility(-6.0, 1.4) is None)
