"""
k-supplier with one facility per block
======================================

The threshold solver: pick a radius L, cover the clients with 2L-balls,
match each ball centre to a block with a facility within L.
"""

import numpy as np

from divclust import brute_force_pm, solve_ksupplier_pm
from divclust.generators import random_partition_instance
from divclust.ksupplier_pm import build_cover, match_cover, threshold_ladder

pinst = random_partition_instance(n_facilities=9, n_clients=10, k=3, seed=3)
print("blocks:", pinst.blocks)

ladder = threshold_ladder(pinst)
print(f"{len(ladder)} candidate thresholds from {ladder[0]:.3f} to {ladder[-1]:.3f}")

sol = solve_ksupplier_pm(pinst)
L = sol.stats["threshold"]
print(f"accepted L = {L:.4f} after {sol.stats['probes']} probes")

cover = build_cover(pinst, L)
graph = match_cover(pinst, cover, L)
print("representatives:", cover.X, "matched to blocks", graph.matching)

# every client is within 3L of the answer
D = pinst.metric.entries
per_client = D[np.ix_(pinst.clients, list(sol.facilities))].min(axis=1)
print(f"max client distance {per_client.max():.4f} <= 3L = {3 * L:.4f}")

opt = brute_force_pm(pinst)
print(f"solver cost {sol.cost:.4f}, optimum {opt.cost:.4f}, ratio {sol.cost / opt.cost:.3f}")
