"""
Intersecting groups and solver modes
====================================

Random points with three overlapping groups.  We compare the warm-up
solver, the greedy submodular solver and the exact inner maximisation
against the exhaustive optimum.
"""

import time

from divclust import brute_force_div, solve_div_clustering
from divclust.generators import euclidean_random

inst = euclidean_random(n_points=12, n_facilities=9, k=3, t=3, group_prob=0.5, seed=7)
print("requirements:", inst.requirements)
for i, g in enumerate(inst.groups):
    print(f"group {i}:", sorted(g))

opt = brute_force_div(inst)
print(f"optimum {opt.cost:.4f} at {opt.facilities}")

runs = {
    "warm-up (exact grid)": dict(method="warmup", grid="exact"),
    "greedy (geometric grid)": dict(),
    "exhaustive inner (exact grid)": dict(inner="exhaustive", grid="exact"),
}
for label, options in runs.items():
    t0 = time.perf_counter()
    sol = solve_div_clustering(inst, 0.25, **options)
    dt = time.perf_counter() - t0
    print(f"{label:32s} cost {sol.cost:.4f}  ratio {sol.cost / opt.cost:.4f}  {dt * 1e3:.0f} ms")
