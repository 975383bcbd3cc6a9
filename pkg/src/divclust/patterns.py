"""Split facilities by characteristic vector and enumerate feasible constraint patterns.

Each feasible k-multiset of parts becomes a partition-matroid instance in
which every block is a (zero-distance) copy of one part.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import EmptyPart
from .instance import PartitionInstance


@dataclass(frozen=True)
class FacilityPartition:
    """Non-empty parts keyed by characteristic vector (tuples of 0/1)."""

    parts: dict
    t: int

    @property
    def keys(self):
        return sorted(self.parts)

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class ConstraintPattern:
    keys: tuple
    sum: tuple
    feasible: bool


def build_partition(inst):
    parts = {}
    for f in inst.facilities.tolist():
        key = tuple(int(b) for b in inst.membership[f])
        parts.setdefault(key, []).append(f)
    return FacilityPartition({key: tuple(sorted(fs)) for key, fs in parts.items()}, inst.t)


def pattern_sum(keys, t):
    total = np.zeros(t, dtype=np.int64)
    for key in keys:
        total += np.asarray(key, dtype=np.int64)
    return tuple(int(x) for x in total)


def enumerate_feasible_patterns(partition, r, k):
    """Yield each k-multiset of part keys whose summed vector covers ``r``.

    Multisets come out once each, in canonical sorted order, and only when
    every key has at least as many facilities as its multiplicity.
    An empty stream means the requirements cannot be met.
    """
    if k < 1:
        raise ValueError("k must be positive")
    r = np.asarray(r, dtype=np.int64)
    keys = partition.keys
    vecs = {key: np.asarray(key, dtype=np.int64) for key in keys}
    for combo in itertools.combinations_with_replacement(keys, k):
        mult = Counter(combo)
        if any(m > len(partition.parts[key]) for key, m in mult.items()):
            continue
        total = sum((vecs[key] for key in combo), np.zeros(partition.t, dtype=np.int64))
        if np.all(total >= r):
            yield ConstraintPattern(combo, tuple(int(x) for x in total), True)


def count_patterns_bound(partition, k):
    from math import comb

    return comb(len(partition) + k - 1, k)


def materialize(partition, pattern, metric, clients=None, weights=None, objective="median"):
    """Build the partition instance of one pattern.

    The local point space is the client list followed by one copy of each
    block's facilities; copies share their original's distances (distance
    zero to each other) and ``origin`` maps every local point back.
    """
    if clients is None:
        clients = metric.client_ids
    clients = np.asarray(clients, dtype=np.int64)
    points = list(clients.tolist())
    blocks = []
    for key in pattern.keys:
        if key not in partition.parts:
            raise EmptyPart(f"pattern references missing part {key}")
        part = partition.parts[key]
        start = len(points)
        points.extend(part)
        blocks.append(range(start, start + len(part)))
    n_clients = len(clients)
    local = metric.restrict(points, range(n_clients), range(n_clients, len(points)))
    return PartitionInstance(
        local,
        tuple(tuple(b) for b in blocks),
        objective,
        clients=np.arange(n_clients),
        weights=weights,
        origin=np.asarray(points, dtype=np.int64),
    )


def transversals(pinst):
    return itertools.product(*pinst.blocks)
