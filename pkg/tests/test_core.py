import itertools
from fractions import Fraction

import pytest
from conftest import random_connected_graph

from tkserver.core import (CostModel, Instance, assignment_cost, bottleneck_cost, bottleneck_matching,
                           covers, multiconfig, relabel, schedule_cost, step_cost, transition_cost)
from tkserver.errors import InvalidParameter, InvalidSchedule
from tkserver.metric import LineSpace, build_clique, build_path


def test_step_cost_models():
    line = LineSpace()
    a, b = (0, 5, 10), (1, 2, 10)
    assert step_cost(line, a, b, CostModel.TIME) == 3
    assert step_cost(line, a, b, "distance") == 4
    with pytest.raises(InvalidParameter):
        step_cost(line, a, (1, 2))
    with pytest.raises(InvalidParameter):
        CostModel.parse("speed")


def test_bottleneck_beats_identity_labels():
    line = LineSpace()
    a, b = (0, 10), (10, 0)
    cost, assignment = bottleneck_matching(line, a, b)
    assert cost == 0 and assignment == [1, 0]
    assert relabel(line, a, b) == (0, 10)


def test_bottleneck_bruteforce(rng):
    for _ in range(200):
        k = int(rng.integers(1, 5))
        g = random_connected_graph(rng, int(rng.integers(k, 9)), p=0.3)
        a = tuple(int(x) for x in rng.integers(g.n, size=k))
        b = tuple(int(x) for x in rng.integers(g.n, size=k))
        perms = list(itertools.permutations(range(k)))
        assert bottleneck_cost(g, a, b) == min(max(g.d(a[i], b[p[i]]) for i in range(k)) for p in perms)
        assert assignment_cost(g, a, b) == min(sum(g.d(a[i], b[p[i]]) for i in range(k)) for p in perms)
        cost, assignment = bottleneck_matching(g, a, b)
        assert sorted(assignment) == list(range(k))
        assert max(g.d(a[i], b[assignment[i]]) for i in range(k)) == cost


def test_bottleneck_rationals():
    line = LineSpace()
    a = (Fraction(1, 3), Fraction(7, 2))
    b = (Fraction(4), Fraction(0))
    assert transition_cost(line, a, b) == Fraction(1, 2)
    assert transition_cost(line, a, b, CostModel.DISTANCE) == Fraction(5, 6)


def test_instance_validation():
    g = build_clique(3)
    with pytest.raises(InvalidParameter):
        Instance(g, (0, 3))
    with pytest.raises(InvalidParameter):
        Instance(g, ())
    with pytest.raises(InvalidParameter):
        Instance(g, (0, 1), (5,))
    assert Instance(g, [0, 1], [2]).k == 2


def test_schedule_cost_and_invalid_index():
    p = build_path(5)
    inst = Instance(p, (0, 4), (1, 3, 2))
    assert schedule_cost(CostModel.TIME, inst, [(1, 4), (1, 3), (2, 3)]) == 3
    assert schedule_cost(CostModel.DISTANCE, inst, [(1, 4), (1, 3), (2, 3)]) == 3
    with pytest.raises(InvalidSchedule) as err:
        schedule_cost(CostModel.TIME, inst, [(1, 4), (1, 4), (2, 3)])
    assert err.value.index == 1
    with pytest.raises(InvalidParameter):
        schedule_cost(CostModel.TIME, inst, [(1, 4)])


def test_multiconfig_helpers():
    assert multiconfig((3, 1, 1)) == (1, 1, 3)
    assert covers((3, 1), 1) and not covers((3, 1), 2)
