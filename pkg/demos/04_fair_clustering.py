"""
Fair clustering through block copies
====================================

Disjoint groups, exactly r_i centres from group i.  Each group is copied
r_i times and the copies become blocks of a partition instance.
"""

from divclust import brute_force_div, solve_fair
from divclust.drivers import reduce_fair_to_pm
from divclust.generators import random_fair_instance
from divclust.instance import check_fair
from divclust.oracle import brute_force_fair

finst = random_fair_instance(n_points=10, k=4, t=2, objective="supplier", seed=1)
for g, r in zip(finst.groups, finst.requirements):
    print(f"group {sorted(g)} needs exactly {r}")

for mode in ("zero-copy", "paper-epsilon"):
    pinst = reduce_fair_to_pm(finst, 0.25, mode)
    print(f"{mode}: {pinst.k} blocks, {pinst.all_facilities.size} facility copies")

opt = brute_force_fair(finst)
for mode in ("zero-copy", "paper-epsilon"):
    sol = solve_fair(finst, 0.25, mode=mode)
    print(f"{mode:14s} {sol.facilities} cost {sol.cost:.4f} fair={check_fair(finst, sol.facilities)}")
print(f"optimum        {opt.facilities} cost {opt.cost:.4f}")

# the same groups as lower bounds only: the cost can only drop
print(f"lower bounds only: {brute_force_div(finst).cost:.4f}")
