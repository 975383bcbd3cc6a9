"""
Weighted client coresets
========================

Two thousand clients on a line, compressed to a few hundred weighted
ones.  We check how well the compressed cost tracks the true cost.
"""

import numpy as np

from divclust import DistanceMatrix, build_coreset
from divclust.metric import cost

rng = np.random.default_rng(0)
metric = DistanceMatrix.from_points(np.sort(rng.random(2000)))

wc = build_coreset(metric, k=2, nu=0.2, delta=0.1, seed=0)
print(f"{len(wc)} weighted clients, total weight {wc.weights.sum():.0f}")

errors = []
for _ in range(100):
    S = rng.choice(2000, size=2, replace=False)
    true = cost(metric, S, "median")
    errors.append(cost(metric, S, "median", wc.weights, wc.ids) / true - 1)
errors = np.abs(errors)
print(f"relative error: median {np.median(errors):.3f}, max {errors.max():.3f}")

# a small instance is passed through untouched
small = DistanceMatrix.from_points(rng.random((10, 2)))
print("small instance pass-through:", build_coreset(small, 3, 0.5, 0.1).passthrough)
