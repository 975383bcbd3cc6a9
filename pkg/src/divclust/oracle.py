"""Exhaustive exact solvers and a submodularity checker, used as ground truth in tests."""

from __future__ import annotations

import itertools
import math
import os

import numpy as np

from .errors import CapExceeded, Infeasible
from .instance import Solution

DEFAULT_CAP = 2_000_000


def enumeration_cap(cap=None):
    if cap is not None:
        return int(cap)
    return int(os.environ.get("DIVCLUST_CAP", DEFAULT_CAP))


def _min_cost(metric, candidates, objective, clients, weights):
    """Vectorised cost of every candidate set (rows of ``candidates``)."""
    if len(clients) == 0:
        return np.zeros(len(candidates))
    D = metric.entries[np.asarray(clients)]
    w =np.ones(len(clients)) if weights is None else np.asarray(weights)
    out = np.empty(len(candidates))
    step = max(1, 2_000_000 // max(1, D.shape[0] * candidates.shape[1]))
    for lo in range(0, len(candidates), step):
        dist = D[:, candidates[lo:lo + step]].min(axis=2)  # clients x chunk
        if objective == "supplier":
            out[lo:lo + step] = dist.max(axis=0)
        else:
            out[lo:lo + step] = w @ (dist * dist if objective == "means" else dist)
    return out


def _argmin(costs):
    # np.argmin returns the first minimum: lexicographic tie-break for ordered candidates
    return int(np.argmin(costs))


def brute_force_div(inst, cap=None, clients=None, weights=None):
    """Exact optimum over all k-subsets meeting the group requirements."""
    F = inst.facilities.tolist()
    if math.comb(len(F), inst.k) > enumeration_cap(cap):
        raise CapExceeded(f"C({len(F)}, {inst.k}) subsets exceed the cap")
    subsets = np.array(list(itertools.combinations(F, inst.k)), dtype=np.int64)
    counts = inst.membership[subsets].sum(axis=1)
    ok = np.all(counts >= np.asarray(inst.requirements), axis=1)
    if not ok.any():
        raise Infeasible("no k-subset satisfies the requirements")
    subsets = subsets[ok]
    clients = inst.metric.client_ids if clients is None else clients
    costs = _min_cost(inst.metric, subsets, inst.objective, clients, weights)
    best = _argmin(costs)
    return Solution(subsets[best], costs[best], inst.objective, True, "oracle/div")


def brute_force_fair(inst, cap=None):
    """Exact optimum choosing exactly r_i facilities from each (disjoint) group."""
    groups = [sorted(g) for g in inst.groups]
    total = math.prod(math.comb(len(g), r) for g, r in zip(groups, inst.requirements))
    if total > enumeration_cap(cap):
        raise CapExceeded(f"{total} fair selections exceed the cap")
    if total == 0:
        raise Infeasible("some group is smaller than its requirement")
    choices = [itertools.combinations(g, r) for g, r in zip(groups, inst.requirements)]
    subsets = np.array([sum(parts, ()) for parts in itertools.product(*choices)], dtype=np.int64)
    costs = _min_cost(inst.metric, subsets, inst.objective, inst.metric.client_ids, None)
    best = _argmin(costs)
    return Solution(sorted(subsets[best]), costs[best], inst.objective, True, "oracle/fair")


def brute_force_pm(pinst, cap=None):
    """Exact optimum over all transversals (one facility per block, block order)."""
    total = math.prod(len(b) for b in pinst.blocks)
    if total > enumeration_cap(cap):
        raise CapExceeded(f"{total} transversals exceed the cap")
    cands = np.array(list(itertools.product(*pinst.blocks)), dtype=np.int64)
    costs = _min_cost(pinst.metric, cands, pinst.objective, pinst.clients, pinst.weights)
    best = _argmin(costs)
    return Solution(cands[best], costs[best], pinst.objective, True, "oracle/pm")


def check_submodular(fn, ground, exhaustive=True, samples=1000, seed=0, atol=1e-9):
    """Check monotonicity and diminishing returns of a set function.

    Returns ``(True, None)`` or ``(False, counterexample)`` where the
    counterexample is ``(S, T, x)`` with ``S <= T``; ``x is None`` flags a
    monotonicity failure ``fn(S) > fn(T)``.
    """
    ground = list(ground)
    cache = {}

    def f(s):
        s = frozenset(s)
        if s not in cache:
            cache[s] = fn(s)
        return cache[s]

    def pairs():
        if exhaustive:
            for mask in range(1 << len(ground)):
                T = frozenset(g for i, g in enumerate(ground) if mask >> i & 1)
                Tl = sorted(T, key=ground.index)
                for r in range(len(Tl) + 1):
                    for S in itertools.combinations(Tl, r):
                        yield frozenset(S), T
        else:
            rng = np.random.default_rng(seed)
            for _ in range(samples):
                T = frozenset(g for g in ground if rng.random() < 0.5)
                S = frozenset(g for g in T if rng.random() < 0.5)
                yield S, T

    for S, T in pairs():
        if f(S) > f(T) + atol:
            return False, (set(S), set(T), None)
        for x in ground:
            if x in T:
                continue
            if f(S | {x}) - f(S) < f(T | {x}) - f(T) - atol:
                return False, (set(S), set(T), x)
    return True, None
