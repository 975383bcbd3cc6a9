"""Weighted client coresets via sensitivity sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter


@dataclass(frozen=True, eq=False)
class WeightedClients:
    ids: np.ndarray
    weights: np.ndarray
    nu: float
    delta: float

    @property
    def passthrough(self):
        return self.nu == 0.0

    def __len__(self):
        return len(self.ids)


def coreset_size(k, nu, n_points):
    """Sample count ``ceil(2 nu^-2 k ln|U|)``."""
    return math.ceil(2.0 / nu**2 * k * math.log(max(n_points, 2)))


def passthrough(metric, clients=None):
    ids = metric.client_ids if clients is None else np.asarray(clients, dtype=np.int64)
    return WeightedClients(np.asarray(ids, dtype=np.int64), np.ones(len(ids)), 0.0, 0.0)


def _bicriteria(dist, n_centers, power, rng):
    """D^z seeding over clients; returns chosen client positions."""
    n = dist.shape[0]
    centers = [int(rng.integers(n))]
    nearest = dist[:, centers[0]] ** power
    for _ in range(n_centers - 1):
        total = nearest.sum()
        if total <= 0:
            break
        c = int(rng.choice(n, p=nearest / total))
        centers.append(c)
        nearest = np.minimum(nearest, dist[:, c] ** power)
    return centers


def build_coreset(metric, k, nu, delta, objective="median", seed=None, clients=None):
    """Sample a weighted client subset whose cost tracks every k-solution within ``1 +- nu``.

    Sensitivities come from a 2k-center D^z seeding: each client gets
    ``cost(c)/total + 1/|cluster(c)|``; ``ceil(2 nu^-2 k ln|U|)`` clients are
    drawn with probability proportional to sensitivity and weighted by the
    inverse of (draws x probability).  Repeated draws merge their weights.
    When the sample count reaches ``|C|`` all clients are returned with unit
    weights (exact, reported as ``nu = 0``).
    """
    if not 0 < nu < 1:
        raise BadParameter(f"nu must lie in (0, 1), got {nu}")
    if not 0 < delta < 1:
        raise BadParameter(f"delta must lie in (0, 1), got {delta}")
    if objective not in ("median", "means"):
        raise BadParameter(f"no coreset for objective {objective!r}")
    if k < 1:
        raise BadParameter("k must be positive")
    ids = metric.client_ids if clients is None else np.asarray(clients, dtype=np.int64)
    m = coreset_size(k, nu, metric.n)
    if m >= len(ids):
        return passthrough(metric, ids)

    rng = np.random.default_rng(seed)
    power = 1 if objective == "median" else 2
    dist = metric.entries[np.ix_(ids, ids)]
    centers = _bicriteria(dist, min(2 * k, len(ids)), power, rng)
    to_centers = dist[:, centers] ** power
    assign = to_centers.argmin(axis=1)
    c_cost = to_centers[np.arange(len(ids)), assign]
    sizes = np.bincount(assign, minlength=len(centers))
    total = c_cost.sum()
    sens = 1.0 / sizes[assign]
    if total > 0:
        sens = sens + c_cost / total
    p = sens / sens.sum()

    draws = rng.choice(len(ids), size=m, p=p)
    weight = np.zeros(len(ids))
    np.add.at(weight, draws, 1.0 / (m * p[draws]))
    keep = np.flatnonzero(weight > 0)
    return WeightedClients(ids[keep].copy(), weight[keep], float(nu), float(delta))
