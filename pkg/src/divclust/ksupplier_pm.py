"""3-approximation for k-supplier with one facility per block.

For a threshold L: greedily cover clients with 2L-balls around
representatives X, match X to blocks that have a facility within L, and
take the matched facility (or any facility of an unmatched block).  The
smallest accepted threshold from the sorted client-facility distances is
used.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .instance import Solution
from .metric import ball

log = logging.getLogger(__name__)

SEARCHES = ("binary", "linear", "checked")


@dataclass
class CoverSet:
    X: tuple
    rep_of: dict

    def __len__(self):
        return len(self.X)


@dataclass
class MatchGraph:
    """Edges (x, block) and the matching, as a dict representative -> block."""

    edges: list
    matching: dict = field(default_factory=dict)
    X: tuple = ()

    @property
    def saturated(self):
        return len(self.matching) == len(self.X)


def threshold_ladder(pinst):
    D = pinst.metric.entries
    return np.unique(D[np.ix_(pinst.clients, pinst.all_facilities)])


def build_cover(pinst, L, limit=None):
    """Lowest-index unmarked client joins X and marks its closed 2L-ball.

    Stops early once ``|X|`` exceeds ``limit`` (the caller rejects L).
    """
    clients = pinst.clients
    unmarked = set(clients.tolist())
    X, rep_of = [], {}
    for c in clients.tolist():
        if c not in unmarked:
            continue
        X.append(c)
        for p in ball(pinst.metric, c, 2 * L, clients).tolist():
            if p in unmarked:
                unmarked.discard(p)
                rep_of[p] = c
        if limit is not None and len(X) > limit:
            break
    return CoverSet(tuple(X), rep_of)


def match_cover(pinst, cover, L):
    """Maximum matching between representatives and blocks with a facility within L."""
    D = pinst.metric.entries
    edges = []
    for xi, x in enumerate(cover.X):
        for i, block in enumerate(pinst.blocks):
            if D[x, list(block)].min() <= L:
                edges.append((x, i))
    graph = MatchGraph(edges, {}, tuple(cover.X))
    if not cover.X:
        return graph
    row_of = {x: r for r, x in enumerate(cover.X)}
    rows = [row_of[x] for x, _ in edges]
    cols = [i for _, i in edges]
    adj = csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(len(cover.X), pinst.k))
    match = maximum_bipartite_matching(adj, perm_type="column")
    graph.matching = {cover.X[r]: int(i) for r, i in enumerate(match) if i >= 0}
    return graph


def assemble(pinst, cover, graph, L):
    """One facility per block: matched blocks take their lowest-index facility within L of x."""
    D = pinst.metric.entries
    picks = [None] * pinst.k
    for x, i in graph.matching.items():
        near = [f for f in pinst.blocks[i] if D[x, f] <= L]
        picks[i] = near[0]
    for i, block in enumerate(pinst.blocks):
        if picks[i] is None:
            picks[i] = block[0]
    S = tuple(picks)
    return Solution(S, pinst.cost(S), "supplier", True, "ksupplier-pm/matching", {"threshold": float(L)})


def try_threshold(pinst, L):
    """(cover, graph) when L is accepted, else None."""
    cover = build_cover(pinst, L, limit=pinst.k)
    if len(cover) > pinst.k:
        return None
    graph = match_cover(pinst, cover, L)
    return (cover, graph) if graph.saturated else None


def _binary(pinst, ladder):
    # every L >= OPT is accepted, so the answer never exceeds OPT
    lo, hi = 0, len(ladder) - 1
    probes = 0
    while lo < hi:
        mid = (lo + hi) // 2
        probes += 1
        if try_threshold(pinst, ladder[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    return hi, probes


def _linear(pinst, ladder):
    for i, L in enumerate(ladder):
        if try_threshold(pinst, L) is not None:
            return i, i + 1
    return len(ladder) - 1, len(ladder)


def solve_ksupplier_pm(pinst, search="binary"):
    """Smallest accepted threshold L, then the assembled solution (cost <= 3L).

    ``search="checked"`` runs both searches and falls back to the linear
    result (with a warning) if they disagree.
    """
    if search not in SEARCHES:
        raise ValueError(f"search must be one of {SEARCHES}")
    ladder = threshold_ladder(pinst)
    if search == "linear":
        idx, probes = _linear(pinst, ladder)
    else:
        idx, probes = _binary(pinst, ladder)
        if search == "checked":
            lin, _ = _linear(pinst, ladder)
            if lin != idx:
                log.warning(
                    "threshold acceptance not monotone: binary search chose %s, linear scan %s",
                    ladder[idx],
                    ladder[lin],
                )
                idx = lin
    L = float(ladder[idx])
    accepted = try_threshold(pinst, L)
    if accepted is None:
        # unreachable for valid instances: L = max ladder accepts
        raise RuntimeError(f"threshold {L} unexpectedly rejected")
    cover, graph = accepted
    sol = assemble(pinst, cover, graph, L)
    sol.stats.update({"probes": probes, "ladder": len(ladder), "representatives": len(cover)})
    return sol
