"""k-median / k-means with one facility per block (partition matroid).

For every guess of one leader client and one radius level per block, the
facilities of block ``j`` in the leader's radius bucket form ``Pi_j``.  A
fictitious anchor at distance ``2*lambda_j`` from ``Pi_j`` is added per
block, and the improvement over the anchors,

    improve(S) = cost(C', anchors) - cost(C', anchors | S),

is maximised over transversals of ``Pi_1 x ... x Pi_k``.  The cheapest
result (measured on the real metric) over all guesses is returned.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMetric, EmptyBlock, EmptyCandidate
from .instance import Solution
from .metric import RadiusGrid, exact_grid, radius_grid

MODES = ("submodular", "warmup")
INNER = ("greedy", "exhaustive")
GRIDS = ("geometric", "exact")


@dataclass(frozen=True)
class LeaderGuess:
    leaders: tuple
    radii: tuple


@dataclass(frozen=True)
class Candidate:
    """One distinct (radius level, Pi) pair for a block, with the leader that produced it."""

    leader: int
    level: int
    radius: float
    pi: tuple
    positions: tuple
    anchor: np.ndarray


def _power(objective):
    return 2 if objective == "means" else 1


def eta_for(epsilon, objective):
    """Grid factor: ``e*eps/2`` for median, ``e*eps/16`` for means."""
    return math.e * epsilon / (16 if objective == "means" else 2)


def make_grid(pinst, grid="geometric", eta=None):
    if grid not in GRIDS:
        raise ValueError(f"grid must be one of {GRIDS}")
    if grid == "exact":
        return exact_grid(pinst.metric, pinst.clients, pinst.all_facilities)
    points = np.concatenate([pinst.clients, pinst.all_facilities])
    try:
        return radius_grid(pinst.metric, eta, points)
    except DegenerateMetric:
        return RadiusGrid(float(eta), np.array([0.0]))


def candidate_sets(pinst, guess, grid):
    """``Pi_j``: facilities of block j whose distance to leader j rounds up to radius j."""
    if len(guess.leaders) != pinst.k or len(guess.radii) != pinst.k:
        raise ValueError("guess dimensions do not match the number of blocks")
    D = pinst.metric.entries
    out = []
    for block, c, lam in zip(pinst.blocks, guess.leaders, guess.radii):
        level = int(grid.bucket(lam))
        b = np.asarray(block)
        out.append(tuple(int(f) for f in b[grid.bucket(D[c, b]) == level]))
    return tuple(out)


class ExtendedMetric:
    """Base metric plus one fictitious anchor per block.

    ``d(F'_j, v) = 2*lambda_j + min_{f in Pi_j} d(f, v)``; anchors are
    ``2*lambda_i + 2*lambda_j + d(Pi_i, Pi_j)`` apart.
    """

    def __init__(self, metric, cands, radii, objective="median"):
        if any(len(pi) == 0 for pi in cands):
            raise EmptyCandidate("every candidate set must be non-empty")
        self.metric = metric
        self.cands = tuple(tuple(int(f) for f in pi) for pi in cands)
        self.radii = tuple(float(r) for r in radii)
        self.objective = objective
        self.power = _power(objective)

    @property
    def k(self):
        return len(self.cands)

    def anchor_rows(self):
        D = self.metric.entries
        return np.stack([2 * lam + D[list(pi)].min(axis=0) for pi, lam in zip(self.cands, self.radii)])

    def anchor_distances(self, clients):
        """Distance of each client to its nearest anchor."""
        return self.anchor_rows()[:, np.asarray(clients)].min(axis=0)

    def full_matrix(self):
        """Distances over the base points followed by the k anchors."""
        D = self.metric.entries
        n, k = self.metric.n, self.k
        rows = self.anchor_rows()
        out = np.zeros((n + k, n + k))
        out[:n, :n] = D
        out[n:, :n] = rows
        out[:n, n:] = rows.T
        for i, j in itertools.combinations(range(k), 2):
            gap = D[np.ix_(self.cands[i], self.cands[j])].min()
            out[n + i, n + j] = out[n + j, n + i] = 2 * self.radii[i] + 2 * self.radii[j] + gap
        return out


def _weights(clients, weights):
    return np.ones(len(clients)) if weights is None else np.asarray(weights, dtype=float)


def improve(ext, clients, S, weights=None):
    """cost(clients, anchors) - cost(clients, anchors + S) under the extended metric."""
    clients = np.asarray(clients, dtype=np.int64)
    w = _weights(clients, weights)
    base = ext.anchor_distances(clients)
    S = [int(f) for f in S]
    if not S:
        return 0.0
    new = np.minimum(base, ext.metric.entries[np.ix_(clients, S)].min(axis=1))
    z = ext.power
    return float(w @ (base**z - new**z))


def _lazy_greedy(base, pis, cols, w, z):
    """Best-marginal pick among uncovered blocks, k rounds, stale gains re-evaluated lazily."""
    cur = base.copy()
    cur_z = cur**z

    def gain(f):
        return float(w @ (cur_z - np.minimum(cur, cols[f]) ** z))

    heap = [(-gain(f), f, j, 0) for j, pi in enumerate(pis) for f in pi]
    heapq.heapify(heap)
    picks = [None] * len(pis)
    n_picked = 0
    while heap and n_picked < len(pis):
        _, f, j, stamp = heapq.heappop(heap)
        if picks[j] is not None:
            continue
        if stamp != n_picked:
            heapq.heappush(heap, (-gain(f), f, j, n_picked))
            continue
        picks[j] = f
        cur = np.minimum(cur, cols[f])
        cur_z = cur**z
        n_picked += 1
    return tuple(picks)


def _exhaustive(base, pis, cols, w, z):
    best, best_val = None, math.inf
    for S in itertools.product(*pis):
        d = base
        for f in S:
            d = np.minimum(d, cols[f])
        val = float(w @ d**z)
        if val < best_val:
            best, best_val = S, val
    return tuple(best)


def _columns(pinst, facilities):
    D = pinst.metric.entries
    return {int(f): D[pinst.clients, f] for f in facilities}


def greedy_matroid_max(ext, cands, clients, weights=None, exhaustive=False):
    """Transversal of ``cands`` (one facility per set) with large ``improve``.

    Lazy greedy by default; ``exhaustive=True`` scans every transversal and
    returns the exact maximiser.
    """
    if any(len(pi) == 0 for pi in cands):
        raise EmptyCandidate("every candidate set must be non-empty")
    clients = np.asarray(clients, dtype=np.int64)
    w = _weights(clients, weights)
    D = ext.metric.entries
    cols = {f: D[clients, f] for pi in cands for f in pi}
    base = ext.anchor_distances(clients)
    run = _exhaustive if exhaustive else _lazy_greedy
    return run(base, [tuple(sorted(pi)) for pi in cands], cols, w, ext.power)


def block_candidates(pinst, grid, prune_leaders=True):
    """Distinct (radius level, Pi) pairs per block, ordered by (radius, block positions).

    With ``prune_leaders`` a (leader, level) pair is kept only when the
    leader is a nearest client of some facility in its bucket; the guess
    built from each optimal facility's nearest client always survives.
    """
    D = pinst.metric.entries
    C = pinst.clients
    out = []
    for block in pinst.blocks:
        b = np.asarray(block)
        dcb = D[np.ix_(C, b)]
        levels = grid.bucket(dcb)
        nearest = dcb <= dcb.min(axis=0)
        seen = {}
        for ci, c in enumerate(C.tolist()):
            for level in np.unique(levels[ci]).tolist():
                mask = levels[ci] == level
                if prune_leaders and not np.any(nearest[ci] & mask):
                    continue
                positions = tuple(np.flatnonzero(mask).tolist())
                if (level, positions) in seen:
                    continue
                pi = tuple(int(f) for f in b[mask])
                lam = float(grid.levels[level])
                anchor = 2 * lam + dcb[:, mask].min(axis=1)
                seen[(level, positions)] = Candidate(c, level, lam, pi, positions, anchor)
        out.append(sorted(seen.values(), key=lambda cand: (cand.radius, cand.positions)))
    return out


def twin_blocks(pinst):
    """For each block, the previous block with identical client distances (or -1)."""
    D = pinst.metric.entries
    C = pinst.clients
    twins = []
    for j, block in enumerate(pinst.blocks):
        prev = -1
        for i in range(j - 1, -1, -1):
            other = pinst.blocks[i]
            if len(other) == len(block) and np.array_equal(D[np.ix_(C, other)], D[np.ix_(C, block)]):
                prev = i
                break
        twins.append(prev)
    return twins


def _ordered_product(sizes, twins):
    """Index tuples of the product, skipping orderings of interchangeable blocks."""

    def rec(j, acc):
        if j == len(sizes):
            yield tuple(acc)
            return
        start = acc[twins[j]] if twins[j] >= 0 else 0
        for i in range(start, sizes[j]):
            acc.append(i)
            yield from rec(j + 1, acc)
            acc.pop()

    return rec(0, [])


def iter_guesses(pinst, grid, prune_leaders=True):
    """Yield (LeaderGuess, candidate sets) for every non-rejected guess."""
    per_block = block_candidates(pinst, grid, prune_leaders)
    twins = twin_blocks(pinst)
    for idx in _ordered_product([len(c) for c in per_block], twins):
        chosen = [per_block[j][i] for j, i in enumerate(idx)]
        guess = LeaderGuess(tuple(c.leader for c in chosen), tuple(c.radius for c in chosen))
        yield guess, tuple(c.pi for c in chosen)


def solve_kmedian_pm(
    pinst,
    epsilon=0.25,
    mode="submodular",
    inner="greedy",
    grid="geometric",
    prune_leaders=True,
):
    """Approximate k-median/k-means over transversals of ``pinst.blocks``.

    ``mode="warmup"`` takes the lowest-index facility of each ``Pi_j`` instead
    of maximising ``improve``.  ``grid="exact"`` uses every client-facility
    distance as a level.  Returns a Solution whose ``facilities`` are local
    ids listed in block order.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if inner not in INNER:
        raise ValueError(f"inner must be one of {INNER}")
    if pinst.objective == "supplier":
        raise ValueError("use solve_ksupplier_pm for the supplier objective")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if pinst.k == 0:
        raise EmptyBlock("instance has no blocks")

    z = _power(pinst.objective)
    radii = make_grid(pinst, grid, eta_for(epsilon, pinst.objective))
    per_block = block_candidates(pinst, radii, prune_leaders)
    twins = twin_blocks(pinst)
    w = _weights(pinst.clients, pinst.weights)
    cols = _columns(pinst, pinst.all_facilities)
    seen_cost = {}

    def evaluate(S):
        if S not in seen_cost:
            d = np.min([cols[f] for f in S], axis=0)
            seen_cost[S] = float((w * d**z).sum())
        return seen_cost[S]

    best, best_key, n_guesses = None, None, 0
    if mode == "warmup":
        # the pick depends only on Pi_j, so distinct picks per block suffice
        picks = [sorted({min(c.pi) for c in cands}) for cands in per_block]
        for idx in _ordered_product([len(p) for p in picks], twins):
            S = tuple(picks[j][i] for j, i in enumerate(idx))
            n_guesses += 1
            key = (evaluate(S), tuple(sorted(S)))
            if best_key is None or key < best_key:
                best, best_key = S, key
    else:
        run = _exhaustive if inner == "exhaustive" else _lazy_greedy
        for idx in _ordered_product([len(c) for c in per_block], twins):
            chosen = [per_block[j][i] for j, i in enumerate(idx)]
            base = np.min([c.anchor for c in chosen], axis=0)
            S = run(base, [c.pi for c in chosen], cols, w, z)
            n_guesses += 1
            key = (evaluate(S), tuple(sorted(S)))
            if best_key is None or key < best_key:
                best, best_key = S, key

    if best is None:
        raise EmptyCandidate("no guess produced non-empty candidate sets")
    return Solution(
        best,
        best_key[0],
        pinst.objective,
        True,
        f"kmedian-pm/{mode}" + ("" if mode == "warmup" else f"-{inner}") + f"/{grid}",
        {"guesses": n_guesses, "grid_levels": len(radii)},
    )
