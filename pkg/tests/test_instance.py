import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divclust import DistanceMatrix, DiversityInstance, PartitionInstance
from divclust.errors import IndexOutOfRange, SchemaError
from divclust.instance import characteristic_vector, check_div_r_sat, check_partition_feasible

from conftest import make_e1, random_div


def test_characteristic_vectors():
    D = DistanceMatrix.from_points(np.arange(5.0))
    inst = DiversityInstance(D, ({0, 1}, {2}, {0, 4}), (0, 0, 0), 2)
    assert characteristic_vector(inst, 0) == (1, 0, 1)
    assert characteristic_vector(inst, 3) == (0, 0, 0)
    single = DiversityInstance(D, ({1},), (1,), 1)
    assert characteristic_vector(single, 1) == (1,)
    with pytest.raises(IndexOutOfRange):
        characteristic_vector(inst, 5)


def test_check_div_r_sat_e1(e1):
    assert check_div_r_sat(e1, {1, 3})
    assert not check_div_r_sat(e1, {0, 1})
    assert not check_div_r_sat(e1, {1})
    assert not check_div_r_sat(e1, {0, 1, 3})


def test_check_partition_feasible():
    D = DistanceMatrix.from_points(np.arange(3.0))
    p = PartitionInstance(D, ((0,), (1,)))
    assert check_partition_feasible(p, {0, 1})
    q = PartitionInstance(D, ((0, 1), (2,)))
    assert not check_partition_feasible(q, {0, 1})
    assert not check_partition_feasible(q, set())
    assert check_partition_feasible(q, {1, 2})


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(groups=(), requirements=()), "groups"),
        (dict(requirements=(1,)), "requirements"),
        (dict(requirements=(3, 0)), "requirements"),
        (dict(k=0), "k"),
        (dict(k=6), "k"),
        (dict(objective="center"), "objective"),
        (dict(groups=({0, 9}, {1})), "groups"),
    ],
)
def test_schema_errors_name_the_field(kwargs, field):
    base = dict(metric=DistanceMatrix.from_points(np.arange(5.0)), groups=({0}, {1}), requirements=(1, 1), k=2)
    base.update(kwargs)
    with pytest.raises(SchemaError) as err:
        DiversityInstance(**base)
    assert err.value.field == field


def test_partition_blocks_must_be_disjoint_and_nonempty():
    D = DistanceMatrix.from_points(np.arange(3.0))
    with pytest.raises(SchemaError):
        PartitionInstance(D, ((0, 1), (1, 2)))
    with pytest.raises(SchemaError):
        PartitionInstance(D, ((0,), ()))


def test_instances_are_immutable(e1):
    with pytest.raises(Exception):
        e1.k = 3
    assert not e1.membership.flags.writeable


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_coverage_monotone_in_characteristic_vectors(seed):
    inst = random_div(seed)
    chi = {f: np.array(characteristic_vector(inst, f)) for f in inst.facilities.tolist()}
    for S in itertools.combinations(inst.facilities.tolist(), inst.k):
        if not check_div_r_sat(inst, S):
            continue
        for f in S:
            for g in inst.facilities.tolist():
                if g in S or not np.all(chi[g] >= chi[f]):
                    continue
                swapped = [x for x in S if x != f] + [g]
                assert check_div_r_sat(inst, swapped)
        break
