"""
Diversity-aware k-median on a line
==================================

Five points on a line.  Group A = {0, 1}, group B = {3, 4}; we want two
facilities with at least one from each group.
"""

import numpy as np

from divclust import DistanceMatrix, DiversityInstance, brute_force_div, solve_div_clustering
from divclust.patterns import build_partition, enumerate_feasible_patterns

metric = DistanceMatrix.from_points(np.arange(5.0))
inst = DiversityInstance(metric, groups=({0, 1}, {3, 4}), requirements=(1, 1), k=2)

# facilities are bucketed by which groups they belong to
partition = build_partition(inst)
print("parts by group membership:", partition.parts)

# only one multiset of buckets can meet both lower bounds
for pattern in enumerate_feasible_patterns(partition, inst.requirements, inst.k):
    print("feasible pattern:", pattern.keys, "covers", pattern.sum)

sol = solve_div_clustering(inst, epsilon=0.25)
print("solver:", sol.facilities, "cost", sol.cost, f"({sol.stats['guesses']} guesses)")

# the exhaustive oracle agrees on the cost; several sets tie at 3
opt = brute_force_div(inst)
print("optimum:", opt.facilities, "cost", opt.cost)

# the same instance under the k-means objective
means = solve_div_clustering(DiversityInstance(metric, inst.groups, inst.requirements, 2, "means"))
print("k-means:", means.facilities, "cost", means.cost)
