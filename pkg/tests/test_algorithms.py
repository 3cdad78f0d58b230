from fractions import Fraction

import pytest

from tkserver.algorithms import ALGORITHMS, make_algorithm
from tkserver.core import Instance, covers, step_cost
from tkserver.errors import InvalidParameter, Unsupported
from tkserver.metric import LineSpace, build_clique, build_cycle, build_path
from tkserver.offline import opt_cost_dp


def test_robin_cycles_labels_on_forced_moves_only():
    alg = make_algorithm("robin", build_clique(4), (0, 1))
    assert alg.serve(0) == (0, 1)           # covered: no move, counter unchanged
    assert alg.serve(2) == (2, 1)
    assert alg.serve(3) == (2, 3)
    assert alg.serve(0) == (0, 3)
    assert alg.m == 3


def test_greedy_nearest_and_ties():
    line = LineSpace()
    alg = make_algorithm("greedy", line, (0, 4))
    assert alg.serve(3) == (0, 3)
    assert alg.serve(Fraction(3, 2)) == (Fraction(3, 2), 3)   # tie between labels 0 and 1


def test_double_coverage_moves():
    line = LineSpace()
    alg = make_algorithm("dc-line", line, (0, 10, 20))
    assert alg.serve(4) == (4, 6, 20)
    assert alg.serve(25) == (4, 6, 25)
    assert alg.serve(-1) == (-1, 6, 25)
    alg = make_algorithm("dc-line", line, (0, 0, 10))
    assert alg.serve(2) == (2, 0, 8)
    with pytest.raises(Unsupported):
        make_algorithm("dc-line", build_clique(3), (0, 1))


@pytest.mark.parametrize("key", sorted(ALGORITHMS))
def test_every_algorithm_covers_requests(key, rng):
    space = LineSpace() if key == "dc-line" else build_cycle(8)
    alg = make_algorithm(key, space, (0, 2, 4), seed=1)
    for r in rng.integers(0, 8, size=40):
        r = int(r)
        prev = alg.config
        conf = alg.serve(r)
        assert covers(conf, r) and len(conf) == 3
        if covers(prev, r) and key != "wfa-time":
            assert conf == prev


def test_wfa_time_never_beats_opt(rng):
    g = build_path(6)
    for _ in range(10):
        reqs = [int(x) for x in rng.integers(0, 6, size=15)]
        alg = make_algorithm("wfa-time", g, (0, 5))
        cost, prev = 0, alg.config
        for r in reqs:
            alg.serve(r)
            cost += step_cost(g, prev, alg.config)
            prev = alg.config
        opt = opt_cost_dp(Instance(g, (0, 5), tuple(reqs))).cost
        assert opt <= cost


def test_bad_inputs():
    with pytest.raises(InvalidParameter):
        make_algorithm("lru", build_clique(3), (0, 1))
    alg = make_algorithm("greedy", build_clique(3), (0, 1))
    with pytest.raises(InvalidParameter):
        alg.serve(7)
