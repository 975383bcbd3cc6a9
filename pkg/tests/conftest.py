import numpy as np
import pytest

from divclust import DistanceMatrix, DiversityInstance
from divclust.generators import euclidean_random, random_fair_instance, random_partition_instance
from divclust.patterns import build_partition, enumerate_feasible_patterns, materialize

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def line5():
    """Points 0..4 on a line, all clients and facilities."""
    return DistanceMatrix.from_points(np.arange(5.0))


def make_e1(objective="median"):
    metric = DistanceMatrix.from_points(np.arange(5.0))
    return DiversityInstance(metric, ({0, 1}, {3, 4}), (1, 1), 2, objective)


@pytest.fixture
def e1():
    return make_e1()


def e1_pinst(objective="median"):
    inst = make_e1(objective)
    partition = build_partition(inst)
    (pattern,) = list(enumerate_feasible_patterns(partition, inst.requirements, inst.k))
    return materialize(partition, pattern, inst.metric, objective=objective)


def random_div(seed, objective="median", max_f=10, max_k=3, max_t=3, extra_points=4):
    """Random intersecting-group instance within the desk-scale limits."""
    rng = np.random.default_rng(10_000 + seed)
    k = int(rng.integers(1, max_k + 1))
    nf = int(rng.integers(max(k, 3), max_f + 1))
    t = int(rng.integers(1, max_t + 1))
    n = nf + int(rng.integers(0, extra_points + 1))
    inst = euclidean_random(n_points=n, n_facilities=nf, k=k, t=t, group_prob=0.5, seed=seed)
    from dataclasses import replace

    return replace(inst, objective=objective)


def random_pm(seed, objective="supplier", max_f=12, max_c=12, max_k=3):
    rng = np.random.default_rng(20_000 + seed)
    k = int(rng.integers(1, max_k + 1))
    nf = int(rng.integers(k, max_f + 1))
    nc = int(rng.integers(1, max_c + 1))
    return random_partition_instance(nf, nc, k, objective, seed=seed)


def random_fair(seed, objective="supplier"):
    rng = np.random.default_rng(30_000 + seed)
    k = int(rng.integers(1, 4))
    t = int(rng.integers(1, 4))
    n = int(rng.integers(max(k, t) + 2, 11))
    return random_fair_instance(n_points=n, k=k, t=t, objective=objective, seed=seed)
