"""Top-level solvers for diversity-aware and fair clustering."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coreset import build_coreset, passthrough
from .errors import BadParameter, Infeasible, NotDisjoint, RequirementSumMismatch
from .instance import PartitionInstance, Solution, check_div_r_sat, check_fair
from .kmedian_pm import solve_kmedian_pm
from .ksupplier_pm import solve_ksupplier_pm
from .metric import DistanceMatrix, cost, validate_metric
from .patterns import build_partition, enumerate_feasible_patterns, materialize

# Coreset is used automatically only above this many clients.
CORESET_AUTO_MIN = 500
FAIR_MODES = ("zero-copy", "paper-epsilon")


def default_threads():
    return os.cpu_count() or 1


def _pool_map(fn, items, threads):
    if threads is None or threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _solve_pm(pinst, epsilon, method, inner, grid, search, prune_leaders):
    if pinst.objective == "supplier":
        return solve_ksupplier_pm(pinst, search=search)
    return solve_kmedian_pm(pinst, epsilon, mode=method, inner=inner, grid=grid, prune_leaders=prune_leaders)


def solve_div_clustering(
    inst,
    epsilon=0.25,
    *,
    method="submodular",
    inner="greedy",
    grid="geometric",
    coreset=None,
    seed=None,
    threads=1,
    search="binary",
    prune_leaders=True,
):
    """Approximate Div-k-median/means/supplier by solving one partition instance per pattern.

    median/means: the client set is replaced by a coreset with
    ``nu = epsilon/16`` (``coreset=None`` enables it only above 500
    clients) and each pattern is solved with tolerance ``epsilon/4``.
    supplier: each pattern goes to the matching-based solver.

    The answer is the cheapest collapsed solution over all patterns, in
    original facility ids; its ``cost`` is measured on the full client set.
    """
    if epsilon <= 0:
        raise BadParameter("epsilon must be positive")
    metric = inst.metric
    partition = build_partition(inst)
    if inst.objective == "supplier":
        clients = passthrough(metric)
        inner_eps = epsilon
    else:
        use_coreset = metric.client_ids.size > CORESET_AUTO_MIN if coreset is None else coreset
        if use_coreset:
            clients = build_coreset(metric, inst.k, epsilon / 16, 0.1, inst.objective, seed)
        else:
            clients = passthrough(metric)
        inner_eps = epsilon / 4

    patterns = list(enumerate_feasible_patterns(partition, inst.requirements, inst.k))
    if not patterns:
        raise Infeasible("no feasible constraint pattern: the requirements cannot be met")

    def run(pattern):
        pinst = materialize(partition, pattern, metric, clients.ids, clients.weights, inst.objective)
        sol = _solve_pm(pinst, inner_eps, method, inner, grid, search, prune_leaders)
        original, local = pinst.collapse(sol.facilities)
        return pinst.cost(local), original, sol.stats.get("guesses", 0)

    results = _pool_map(run, patterns, threads)
    sample_cost, best, _ = min(results, key=lambda r: (r[0], r[1]))
    if not check_div_r_sat(inst, best):
        raise AssertionError(f"driver produced an infeasible solution {best}")
    tag = "div/supplier-matching" if inst.objective == "supplier" else f"div/fpt-{method}"
    return Solution(
        best,
        cost(metric, best, inst.objective),
        inst.objective,
        True,
        tag,
        {
            "patterns": len(patterns),
            "guesses": sum(r[2] for r in results),
            "coreset_size": len(clients),
            "sample_cost": sample_cost,
        },
    )


def _check_fair_instance(finst):
    seen = set()
    for i, g in enumerate(finst.groups):
        if seen & g:
            raise NotDisjoint(f"group {i} intersects an earlier group")
        seen |= g
    if sum(finst.requirements) != finst.k:
        raise RequirementSumMismatch(f"sum of requirements {sum(finst.requirements)} != k={finst.k}")
    for i, (g, r) in enumerate(zip(finst.groups, finst.requirements)):
        if r > len(g):
            raise Infeasible(f"group {i} has {len(g)} facilities but requires {r}")


def min_positive_distance(metric):
    d = metric.entries
    pos = d[d > 0]
    return float(pos.min()) if pos.size else 0.0


def reduce_fair_to_pm(finst, epsilon=0.25, mode="zero-copy", clients=None, weights=None):
    """Partition instance with ``r_i`` copies of group ``G_i`` as blocks.

    zero-copy: copies are exact clones.  paper-epsilon: every copy beyond the
    first sits ``delta = (epsilon/9) * d_min`` from its original (d_min the
    smallest positive distance) and the remaining distances are completed
    along paths through the original, which keeps the result a metric.
    """
    if mode not in FAIR_MODES:
        raise BadParameter(f"fair mode must be one of {FAIR_MODES}")
    _check_fair_instance(finst)
    metric = finst.metric
    if clients is None:
        clients = metric.client_ids
    clients = np.asarray(clients, dtype=np.int64)
    points = list(clients.tolist())
    offset = [0] * len(points)
    blocks = []
    for g, r in zip(finst.groups, finst.requirements):
        members = sorted(g)
        for copy in range(r):
            start = len(points)
            points.extend(members)
            offset.extend([copy] * len(members))
            blocks.append(tuple(range(start, start + len(members))))
    n_clients = len(clients)
    if mode == "zero-copy":
        local = metric.restrict(points, range(n_clients), range(n_clients, len(points)))
    else:
        delta = epsilon / 9 * min_positive_distance(metric)
        p = np.asarray(points)
        shifted = np.asarray(offset) > 0
        d = metric.entries[np.ix_(p, p)] + delta * (shifted[:, None].astype(float) + shifted[None, :])
        same = (p[:, None] == p[None, :]) & (np.asarray(offset)[:, None] != np.asarray(offset)[None, :])
        d[same] = delta
        np.fill_diagonal(d, 0.0)
        local = DistanceMatrix(d, range(n_clients), range(n_clients, len(points)), validate=False)
    return PartitionInstance(
        local,
        tuple(blocks),
        finst.objective,
        clients=np.arange(n_clients),
        weights=weights,
        origin=np.asarray(points, dtype=np.int64),
    )


def solve_fair(
    finst,
    epsilon=0.25,
    *,
    mode="zero-copy",
    method="submodular",
    inner="greedy",
    grid="geometric",
    search="binary",
    prune_leaders=True,
):
    """Fair clustering (exactly ``r_i`` centers from each disjoint group) via the partition reduction."""
    pinst = reduce_fair_to_pm(finst, epsilon, mode)
    sol = _solve_pm(pinst, epsilon, method, inner, grid, search, prune_leaders)
    original, _ = pinst.collapse(sol.facilities)
    if not check_fair(finst, original):
        raise AssertionError(f"fair reduction produced an invalid selection {original}")
    return Solution(
        original,
        cost(finst.metric, original, finst.objective),
        finst.objective,
        True,
        f"fair/{mode}",
        {"blocks": pinst.k, "reduced_facilities": int(pinst.all_facilities.size), **sol.stats},
    )


def check_reduced_metric(pinst):
    """Raise MetricViolation if the reduced instance is not a metric."""
    validate_metric(pinst.metric.entries)

