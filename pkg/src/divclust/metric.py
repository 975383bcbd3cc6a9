"""Dense distance storage, clustering costs, balls and radius grids."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateMetric, EmptySolution, IndexOutOfRange, MetricViolation

OBJECTIVES = ("median", "means", "supplier")

# Triangle validation is cubic; above this size it is skipped unless forced.
VALIDATE_LIMIT = 512


def check_objective(objective):
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    return objective


def validate_metric(entries, atol=1e-9):
    """Raise MetricViolation (with a witness) unless ``entries`` is a finite metric."""
    d = np.asarray(entries, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricViolation(f"distance matrix must be square, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        u, v = np.argwhere(~np.isfinite(d))[0]
        raise MetricViolation(f"non-finite distance at ({u}, {v})", (int(u), int(v)))
    if np.any(d < 0):
        u, v = np.argwhere(d < 0)[0]
        raise MetricViolation(f"negative distance at ({u}, {v})", (int(u), int(v)))
    diag = np.flatnonzero(np.abs(np.diag(d)) > atol)
    if diag.size:
        u = int(diag[0])
        raise MetricViolation(f"d({u},{u}) = {d[u, u]} is not zero", (u, u))
    asym = np.argwhere(np.abs(d - d.T) > atol)
    if asym.size:
        u, v = (int(x) for x in asym[0])
        raise MetricViolation(f"asymmetric distances: d({u},{v}) != d({v},{u})", (u, v))
    for v in range(d.shape[0]):
        # d[u, w] <= d[u, v] + d[v, w] for all u, w
        slack = d[:, v][:, None] + d[v, :][None, :] - d
        bad = np.argwhere(slack < -atol * max(1.0, float(d.max())))
        if bad.size:
            u, w = (int(x) for x in bad[0])
            raise MetricViolation(
                f"triangle inequality fails: d({u},{w}) > d({u},{v}) + d({v},{w})", (u, v, w)
            )


@dataclass(frozen=True, eq=False, init=False)
class DistanceMatrix:
    """Symmetric metric over points ``0..n-1`` with client and facility index sets.

    Points may be clients, facilities, both or neither.  The matrix is copied
    and frozen on construction.
    """

    entries: np.ndarray
    client_ids: np.ndarray
    facility_ids: np.ndarray

    def __init__(self, entries, client_ids=None, facility_ids=None, *, validate=None):
        d = np.array(entries, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise MetricViolation(f"distance matrix must be square, got shape {d.shape}")
        n = d.shape[0]
        if validate is None:
            validate = n <= VALIDATE_LIMIT
            if not validate:
                warnings.warn(f"skipping O(n^3) metric validation for n={n}", stacklevel=2)
        if validate:
            validate_metric(d)
        d.setflags(write=False)
        clients = _index_array(range(n) if client_ids is None else client_ids, n, "client_ids")
        facilities = _index_array(
            range(n) if facility_ids is None else facility_ids, n, "facility_ids"
        )
        object.__setattr__(self, "entries", d)
        object.__setattr__(self, "client_ids", clients)
        object.__setattr__(self, "facility_ids", facilities)

    @classmethod
    def from_points(cls, points, client_ids=None, facility_ids=None, *, validate=False):
        """Euclidean metric over the rows of ``points``."""
        x = np.asarray(points, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        diff = x[:, None, :] - x[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        return cls(d, client_ids, facility_ids, validate=validate)

    @property
    def n(self):
        return self.entries.shape[0]

    @cached_property
    def squared(self):
        sq = self.entries**2
        sq.setflags(write=False)
        return sq

    @cached_property
    def is_facility(self):
        mask = np.zeros(self.n, dtype=bool)
        mask[self.facility_ids] = True
        return mask

    def check_ids(self, ids, what="index"):
        ids = np.asarray(ids, dtype=np.int64).reshape(-1)
        if ids.size and (ids.min() < 0 or ids.max() >= self.n):
            bad = ids[(ids < 0) | (ids >= self.n)][0]
            raise IndexOutOfRange(f"{what} {bad} outside [0, {self.n})")
        return ids

    def restrict(self, point_ids, client_ids, facility_ids):
        """Sub-metric over ``point_ids`` (repeats allowed: they become zero-distance copies).

        ``client_ids``/``facility_ids`` are positions in the new point list.
        """
        p = self.check_ids(point_ids)
        return DistanceMatrix(self.entries[np.ix_(p, p)], client_ids, facility_ids, validate=False)


def _index_array(ids, n, name):
    arr = np.unique(np.asarray(list(ids), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise IndexOutOfRange(f"{name} contains an index outside [0, {n})")
    arr.setflags(write=False)
    return arr


def cost(D, S, objective="median", weights=None, clients=None):
    """Clustering cost of facility set ``S``.

    median and means sum (weighted) distances and squared distances to the
    nearest facility in ``S``; supplier returns the unweighted maximum.
    ``weights`` align with ``clients`` (default: all clients of ``D``).
    """
    check_objective(objective)
    S = D.check_ids(list(S), "facility")
    if S.size == 0:
        raise EmptySolution("facility set is empty")
    if not np.all(D.is_facility[S]):
        raise IndexOutOfRange(f"{S[~D.is_facility[S]][0]} is not a facility")
    clients = D.client_ids if clients is None else D.check_ids(clients, "client")
    if clients.size == 0:
        return 0.0
    dist = D.entries[np.ix_(clients, S)].min(axis=1)
    if objective == "supplier":
        return float(dist.max())
    if objective == "means":
        dist = dist * dist
    if weights is None:
        return float(dist.sum())
    w = np.asarray(weights, dtype=float)
    if w.shape != dist.shape:
        raise ValueError(f"weights have shape {w.shape}, expected {dist.shape}")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    return float((w * dist).sum())


def ball(D, center, radius, within=None):
    """Closed ball: sorted ids ``p`` in ``within`` with ``d(center, p) <= radius``."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    (center,) = D.check_ids([center], "center")
    within = np.arange(D.n) if within is None else D.check_ids(within)
    hit = within[D.entries[center, within] <= radius]
    return np.unique(hit)


@dataclass(frozen=True)
class RadiusGrid:
    """Ascending radius levels starting with a dedicated zero level."""

    eta: float
    levels: np.ndarray

    def bucket(self, d):
        """Index of the smallest level >= d, i.e. ``levels[i-1] < d <= levels[i]``."""
        idx = np.searchsorted(self.levels, d, side="left")
        return np.minimum(idx, len(self.levels) - 1)

    def __len__(self):
        return len(self.levels)


def radius_grid(D, eta, points=None):
    """Geometric levels ``d_min (1+eta)^j`` clipped to ``[d_min, diameter]`` plus 0.

    ``d_min`` and the diameter are taken over ``points`` (default: every
    point).  The diameter is always the top level.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    pts = np.arange(D.n) if points is None else D.check_ids(points)
    sub = D.entries[np.ix_(pts, pts)]
    positive = sub[sub > 0]
    if positive.size == 0:
        raise DegenerateMetric("all pairwise distances are zero")
    d_min, diameter = float(positive.min()), float(positive.max())
    levels = [0.0]
    level = d_min
    while level < diameter * (1 - 1e-12):
        levels.append(level)
        level *= 1 + eta
    levels.append(diameter)
    return RadiusGrid(float(eta), np.array(levels))


def exact_grid(D, clients=None, facilities=None):
    """All distinct client-facility distances as levels (plus 0): no rounding error."""
    clients = D.client_ids if clients is None else D.check_ids(clients)
    facilities = D.facility_ids if facilities is None else D.check_ids(facilities)
    vals = np.unique(np.concatenate([[0.0], D.entries[np.ix_(clients, facilities)].ravel()]))
    return RadiusGrid(0.0, vals)


def grid_size_bound(d_min, diameter, eta):
    return math.ceil(math.log(diameter / d_min, 1 + eta)) + 2
