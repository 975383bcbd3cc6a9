import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divclust import DistanceMatrix, PartitionInstance, brute_force_pm
from divclust.instance import check_partition_feasible
from divclust.ksupplier_pm import (
    CoverSet,
    assemble,
    build_cover,
    match_cover,
    solve_ksupplier_pm,
    threshold_ladder,
    try_threshold,
)

from conftest import e1_pinst, random_pm


def _local(p, originals):
    """Local ids of the client copies of the given original points."""
    return [int(c) for c in p.clients if int(p.origin[c]) in originals]


def test_cover_e1():
    p = e1_pinst("supplier")
    cover = build_cover(p, 1.0)
    assert p.origin[list(cover.X)].tolist() == [0, 3]
    assert {p.origin[c]: p.origin[r] for c, r in cover.rep_of.items()} == {0: 0, 1: 0, 2: 0, 3: 3, 4: 3}


def test_cover_extremes():
    p = e1_pinst("supplier")
    assert p.origin[list(build_cover(p, 2.0).X)].tolist() == [0]
    assert len(build_cover(p, 0.0)) == 5


def test_matching_e1():
    p = e1_pinst("supplier")
    cover = build_cover(p, 1.0)
    graph = match_cover(p, cover, 1.0)
    assert graph.saturated
    by_origin = {int(p.origin[x]): set(p.origin[list(p.blocks[i])].tolist()) for x, i in graph.matching.items()}
    assert by_origin == {0: {0, 1}, 3: {3, 4}}
    assert len(graph.edges) == 2
    sol = assemble(p, cover, graph, 1.0)
    orig, _ = p.collapse(sol.facilities)
    assert orig == (0, 3) and sol.cost == 1.0


def test_matching_empty_and_unreachable():
    p = e1_pinst("supplier")
    empty = match_cover(p, CoverSet((), {}), 1.0)
    assert empty.saturated and empty.matching == {}
    D = DistanceMatrix.from_points(np.array([0.0, 10.0]), client_ids=[0], facility_ids=[1])
    q = PartitionInstance(D, ((1,),), "supplier")
    assert not match_cover(q, build_cover(q, 1.0), 1.0).saturated


def test_assemble_fills_unmatched_blocks_with_lowest_index():
    p = e1_pinst("supplier")
    sol = assemble(p, CoverSet((), {}), match_cover(p, CoverSet((), {}), 10.0), 10.0)
    assert sol.facilities == tuple(b[0] for b in p.blocks)


def test_solve_e1():
    p = e1_pinst("supplier")
    sol = solve_ksupplier_pm(p)
    assert sol.cost == 1.0 == brute_force_pm(p).cost
    assert p.collapse(sol.facilities)[0] == (0, 3)


def test_colocated_clients_cost_zero():
    D = DistanceMatrix.from_points(np.array([0.0, 0.0, 5.0, 5.0]), client_ids=[0, 2], facility_ids=[1, 3])
    p = PartitionInstance(D, ((1,), (3,)), "supplier")
    assert solve_ksupplier_pm(p).cost == 0.0


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 1_000_000))
def test_three_approximation_and_structure(seed):
    p = random_pm(seed, "supplier")
    opt = brute_force_pm(p).cost
    sol = solve_ksupplier_pm(p)
    L = sol.stats["threshold"]
    assert check_partition_feasible(p, sol.facilities)
    assert L <= opt + 1e-12
    D = p.metric.entries
    per_client = D[np.ix_(p.clients, list(sol.facilities))].min(axis=1)
    assert np.all(per_client <= 3 * L + 1e-12)
    assert sol.cost <= 3 * opt + 1e-9

    cover, graph = try_threshold(p, opt)
    for x, y in itertools.combinations(cover.X, 2):
        assert D[x, y] > 2 * opt
    assert graph.saturated
    for c, r in cover.rep_of.items():
        assert D[c, r] <= 2 * opt
    assert len(cover) <= p.k


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 1_000_000))
def test_every_threshold_above_opt_accepted_and_searches_bounded(seed):
    p = random_pm(seed, "supplier")
    opt = brute_force_pm(p).cost
    ladder = threshold_ladder(p)
    accepted = [try_threshold(p, L) is not None for L in ladder]
    assert all(ok for L, ok in zip(ladder, accepted) if L >= opt)
    first = ladder[accepted.index(True)]
    a = solve_ksupplier_pm(p, "binary")
    b = solve_ksupplier_pm(p, "linear")
    c = solve_ksupplier_pm(p, "checked")
    assert b.stats["threshold"] == c.stats["threshold"] == first
    assert first <= a.stats["threshold"] <= opt
    assert max(a.cost, b.cost) <= 3 * opt + 1e-9


def test_acceptance_is_not_monotone_in_general():
    # greedy representatives at a larger L can crowd into one block
    p = random_pm(26239, "supplier")
    ladder = threshold_ladder(p)
    accepted = [try_threshold(p, L) is not None for L in ladder]
    first = accepted.index(True)
    assert not all(accepted[first:])
    opt = brute_force_pm(p).cost
    assert solve_ksupplier_pm(p).stats["threshold"] <= opt
    assert solve_ksupplier_pm(p, "checked").stats["threshold"] == ladder[first]


def test_bad_search():
    with pytest.raises(ValueError):
        solve_ksupplier_pm(e1_pinst("supplier"), "ternary")
