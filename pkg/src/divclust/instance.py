"""Problem objects: diversity-aware instances, partition-matroid instances, solutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import IndexOutOfRange, SchemaError
from .metric import DistanceMatrix, check_objective, cost


@dataclass(frozen=True, eq=False)
class DiversityInstance:
    """Choose ``k`` facilities with ``|S & groups[i]| >= requirements[i]`` for every group.

    Groups may intersect.  With pairwise disjoint groups and
    ``sum(requirements) == k`` the same object describes a fair-clustering
    instance (exactly ``r_i`` centers per group).
    """

    metric: DistanceMatrix
    groups: tuple
    requirements: tuple
    k: int
    objective: str = "median"

    def __post_init__(self):
        groups = tuple(frozenset(int(f) for f in g) for g in self.groups)
        reqs = tuple(int(r) for r in self.requirements)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "requirements", reqs)
        object.__setattr__(self, "k", int(self.k))
        try:
            check_objective(self.objective)
        except ValueError as exc:
            raise SchemaError(str(exc), "objective") from None
        if not groups:
            raise SchemaError("at least one group is required", "groups")
        if len(reqs) != len(groups):
            raise SchemaError(
                f"{len(reqs)} requirements for {len(groups)} groups", "requirements"
            )
        n_fac = self.metric.facility_ids.size
        if self.k < 1 or self.k > n_fac:
            raise SchemaError(f"k={self.k} must lie in [1, |F|={n_fac}]", "k")
        facilities = set(self.metric.facility_ids.tolist())
        for i, g in enumerate(groups):
            if not g <= facilities:
                raise SchemaError(f"group {i} contains non-facilities {sorted(g - facilities)}", "groups")
        for i, r in enumerate(reqs):
            if r < 0 or r > self.k:
                raise SchemaError(f"requirement r_{i}={r} outside [0, k]", "requirements")

    @property
    def t(self):
        return len(self.groups)

    @property
    def facilities(self):
        return self.metric.facility_ids

    @cached_property
    def membership(self):
        """Boolean ``(n, t)`` matrix: row ``f`` is the characteristic vector of ``f``."""
        m = np.zeros((self.metric.n, self.t), dtype=bool)
        for i, g in enumerate(self.groups):
            m[sorted(g), i] = True
        m.setflags(write=False)
        return m

    def cost(self, S, weights=None, clients=None):
        return cost(self.metric, S, self.objective, weights, clients)


def characteristic_vector(inst, f):
    """Membership bits of facility ``f`` across the groups, as a tuple of 0/1."""
    f = int(f)
    if f < 0 or f >= inst.metric.n or not inst.metric.is_facility[f]:
        raise IndexOutOfRange(f"{f} is not a facility")
    return tuple(int(b) for b in inst.membership[f])


def check_div_r_sat(inst, S):
    """True iff ``S`` has exactly ``k`` distinct facilities meeting every requirement."""
    S = set(int(f) for f in S)
    if len(S) != inst.k:
        return False
    if any(f < 0 or f >= inst.metric.n or not inst.metric.is_facility[f] for f in S):
        return False
    counts = inst.membership[sorted(S)].sum(axis=0)
    return bool(np.all(counts >= np.asarray(inst.requirements)))


def check_fair(inst, S):
    """Exactly ``r_i`` of the ``k`` chosen facilities fall in each (disjoint) group."""
    S = set(int(f) for f in S)
    if len(S) != inst.k:
        return False
    return all(len(S & g) == r for g, r in zip(inst.groups, inst.requirements))


@dataclass(frozen=True, eq=False)
class PartitionInstance:
    """k disjoint facility blocks over a local point space; pick one facility per block.

    ``origin[p]`` maps local point ``p`` back to the id it copies in the parent
    space, so solutions can be reported in original ids.  ``clients`` and
    ``weights`` default to all clients of ``metric`` with unit weight.
    """

    metric: DistanceMatrix
    blocks: tuple
    objective: str = "median"
    clients: np.ndarray | None = None
    weights: np.ndarray | None = None
    origin: np.ndarray | None = None

    def __post_init__(self):
        check_objective(self.objective)
        blocks = tuple(tuple(sorted(int(f) for f in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for j, b in enumerate(blocks):
            if not b:
                raise SchemaError(f"block {j} is empty", "blocks")
            self.metric.check_ids(b, "facility")
            if seen & set(b):
                raise SchemaError(f"block {j} overlaps an earlier block", "blocks")
            seen |= set(b)
        clients = self.metric.client_ids if self.clients is None else self.metric.check_ids(self.clients)
        object.__setattr__(self, "clients", clients)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != clients.shape:
                raise SchemaError("weights do not align with clients", "weights")
            object.__setattr__(self, "weights", w)
        origin = np.arange(self.metric.n) if self.origin is None else np.asarray(self.origin, dtype=np.int64)
        object.__setattr__(self, "origin", origin)

    @property
    def k(self):
        return len(self.blocks)

    @cached_property
    def all_facilities(self):
        return np.array(sorted(f for b in self.blocks for f in b), dtype=np.int64)

    def cost(self, S):
        return cost(self.metric, S, self.objective, self.weights, self.clients)

    def collapse(self, S):
        """Map a transversal to distinct original ids.

        ``S`` is ordered by block.  When two blocks picked copies of the same
        original, the later block switches to its best unused member
        (smallest resulting cost, lowest original id on ties).
        """
        S = [int(f) for f in S]
        if len(S) != self.k:
            raise ValueError(f"expected one facility per block ({self.k}), got {len(S)}")
        chosen, used = [], set()
        for j, f in enumerate(S):
            if int(self.origin[f]) not in used:
                chosen.append(f)
                used.add(int(self.origin[f]))
                continue
            options = [g for g in self.blocks[j] if int(self.origin[g]) not in used]
            if not options:
                raise SchemaError(f"block {j} has no unused original to replace a duplicate")
            rest = chosen + [s for s in S[j + 1:]]
            best = min(options, key=lambda g: (self.cost(rest + [g]), int(self.origin[g])))
            chosen.append(best)
            used.add(int(self.origin[best]))
        return tuple(sorted(int(self.origin[f]) for f in chosen)), tuple(chosen)


def check_partition_feasible(pinst, S):
    """True iff ``S`` takes exactly one facility from every block and nothing else."""
    S = set(int(f) for f in S)
    if not S or not S <= set(pinst.all_facilities.tolist()):
        return False
    return all(len(S.intersection(b)) == 1 for b in pinst.blocks)


@dataclass
class Solution:
    facilities: tuple
    cost: float
    objective: str
    feasible: bool
    provenance: str
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.facilities = tuple(int(f) for f in self.facilities)
        self.cost = float(self.cost)

    def key(self):
        """Deterministic ordering used for min-reductions."""
        return (self.cost, tuple(sorted(self.facilities)))
