"""Reproducible random instances for tests, demos and the CLI."""

from __future__ import annotations

import numpy as np

from .errors import BadParameter
from .instance import DiversityInstance, PartitionInstance
from .metric import DistanceMatrix

KINDS = ("euclidean-random", "planted-groups", "vertex-cover-hard")


def _requirements_for(rng, membership, facilities, k, slack=0.5):
    """Requirements met by a hidden random k-subset, so the instance is feasible."""
    hidden = rng.choice(facilities, size=k, replace=False)
    covered = membership[hidden].sum(axis=0)
    return tuple(int(rng.integers(0, c + 1)) if rng.random() < slack else int(c) for c in covered)


def euclidean_random(n_points=10, n_facilities=None, k=2, t=2, dim=2, group_prob=0.4, seed=None):
    """Uniform points in the unit cube; every point is a client, a random subset are facilities.

    Groups are random (and may intersect); requirements are sampled so a
    hidden k-subset satisfies them.
    """
    if n_points < 2 or k < 1 or t < 1 or dim < 1:
        raise BadParameter("need n_points >= 2, k >= 1, t >= 1, dim >= 1")
    n_facilities = n_points if n_facilities is None else n_facilities
    if not k <= n_facilities <= n_points:
        raise BadParameter("need k <= n_facilities <= n_points")
    rng = np.random.default_rng(seed)
    x = rng.random((n_points, dim))
    facilities = np.sort(rng.choice(n_points, size=n_facilities, replace=False))
    metric = DistanceMatrix.from_points(x, None, facilities)
    membership = np.zeros((n_points, t), dtype=bool)
    membership[facilities] = rng.random((n_facilities, t)) < group_prob
    groups = tuple(frozenset(np.flatnonzero(membership[:, i]).tolist()) for i in range(t))
    reqs = _requirements_for(rng, membership, facilities, k)
    return DiversityInstance(metric, groups, reqs, k)


def planted_groups(n_points=30, k=3, t=2, dim=2, spread=0.05, seed=None):
    """k Gaussian blobs; group i collects the facilities of blobs ``b`` with ``b % t == i``.

    With ``t == 1`` every facility is in the single group and the instance is
    plain k-clustering.
    """
    if n_points < k or k < 1 or t < 1:
        raise BadParameter("need n_points >= k >= 1 and t >= 1")
    rng = np.random.default_rng(seed)
    centers = rng.random((k, dim))
    blob = rng.integers(0, k, size=n_points)
    blob[:k] = np.arange(k)
    x = centers[blob] + spread * rng.standard_normal((n_points, dim))
    metric = DistanceMatrix.from_points(x)
    groups = tuple(frozenset(np.flatnonzero(blob % t == i).tolist()) for i in range(t))
    reqs = tuple(min(1, len(g)) for g in groups)
    return DiversityInstance(metric, groups, reqs, k)


def vertex_cover_hard(n_vertices=6, edge_prob=0.5, k=3, far=None, seed=None, edges=None):
    """Vertex-cover reduction: one size-2 group per edge, all requirements 1.

    Points are the vertices (clients and facilities); adjacent vertices are
    at distance 1, others at ``far`` (default ``n + 1``).  The default
    distances break the triangle inequality, so the metric is not
    validated; pass ``far=2`` for a genuine metric with the same groups.
    """
    if n_vertices < 2 or not 1 <= k <= n_vertices:
        raise BadParameter("need n_vertices >= 2 and 1 <= k <= n_vertices")
    rng = np.random.default_rng(seed)
    if edges is None:
        edges = [
            (u, v)
            for u in range(n_vertices)
            for v in range(u + 1, n_vertices)
            if rng.random() < edge_prob
        ]
        if not edges:
            edges = [(0, 1)]
    far = n_vertices + 1 if far is None else far
    d = np.full((n_vertices, n_vertices), float(far))
    np.fill_diagonal(d, 0.0)
    for u, v in edges:
        d[u, v] = d[v, u] = 1.0
    metric = DistanceMatrix(d, validate=far <= 2)
    groups = tuple(frozenset(e) for e in edges)
    return DiversityInstance(metric, groups, (1,) * len(groups), k)


def generate(kind, params=None, seed=None):
    params = dict(params or {})
    if kind == "euclidean-random":
        return euclidean_random(seed=seed, **params)
    if kind == "planted-groups":
        return planted_groups(seed=seed, **params)
    if kind == "vertex-cover-hard":
        return vertex_cover_hard(seed=seed, **params)
    raise BadParameter(f"unknown generator {kind!r}; expected one of {KINDS}")


def random_partition_instance(n_facilities=8, n_clients=8, k=3, objective="supplier", dim=2, seed=None):
    """Random points split into k non-empty disjoint blocks (k-median/supplier with a partition matroid)."""
    if n_facilities < k:
        raise BadParameter("need at least k facilities")
    rng = np.random.default_rng(seed)
    n = n_facilities + n_clients
    metric = DistanceMatrix.from_points(rng.random((n, dim)), range(n_facilities, n), range(n_facilities))
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n_facilities - k)])
    rng.shuffle(labels)
    blocks = tuple(tuple(np.flatnonzero(labels == j).tolist()) for j in range(k))
    return PartitionInstance(metric, blocks, objective)


def random_fair_instance(n_points=10, n_facilities=None, k=3, t=2, objective="supplier", seed=None):
    """Disjoint facility groups with ``sum(r) == k`` and ``r_i <= |G_i|``."""
    rng = np.random.default_rng(seed)
    n_facilities = n_points if n_facilities is None else n_facilities
    x = rng.random((n_points, 2))
    facilities = np.sort(rng.choice(n_points, size=n_facilities, replace=False))
    metric = DistanceMatrix.from_points(x, None, facilities)
    while True:
        labels = rng.integers(0, t, size=n_facilities)
        groups = [facilities[labels == i].tolist() for i in range(t)]
        sizes = np.array([len(g) for g in groups])
        if sizes.sum() < k or np.any(sizes == 0):
            continue
        reqs = np.zeros(t, dtype=int)
        for _ in range(k):
            open_ = np.flatnonzero(reqs < sizes)
            reqs[rng.choice(open_)] += 1
        return DiversityInstance(metric, tuple(groups), tuple(int(r) for r in reqs), k, objective)
