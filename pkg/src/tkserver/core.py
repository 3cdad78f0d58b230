"""Configurations, instances, schedules and the two cost models."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InvalidParameter, InvalidSchedule
from .metric import MetricSpace


class CostModel(enum.Enum):
    TIME = "time"
    DISTANCE = "distance"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameter(f"unknown cost model {value!r}") from None


def multiconfig(config) -> tuple:
    """Canonical unlabeled view of a configuration."""
    return tuple(sorted(config))


def covers(config, point) -> bool:
    return any(p == point for p in config)


def check_config(space: MetricSpace, config, k=None) -> tuple:
    config = tuple(config)
    if k is not None and len(config) != k:
        raise InvalidParameter(f"configuration has {len(config)} servers, expected {k}")
    for p in config:
        if not space.contains(p):
            raise InvalidParameter(f"point {p!r} is not in the space")
    return config


@dataclass(frozen=True)
class Instance:
    space: MetricSpace
    initial: tuple
    requests: tuple = field(default_factory=tuple)

    def __post_init__(self):
        init = check_config(self.space, self.initial)
        if not init:
            raise InvalidParameter("at least one server is required")
        object.__setattr__(self, "initial", init)
        reqs = tuple(self.requests)
        for r in reqs:
            if not self.space.contains(r):
                raise InvalidParameter(f"request {r!r} is not in the space")
        object.__setattr__(self, "requests", reqs)

    @property
    def k(self) -> int:
        return len(self.initial)


def step_cost(space: MetricSpace, prev, nxt, model=CostModel.TIME):
    """Cost of moving each label i from prev[i] to nxt[i]."""
    if len(prev) != len(nxt):
        raise InvalidParameter("configurations have different numbers of servers")
    moves = [space.d(a, b) for a, b in zip(prev, nxt)]
    if not moves:
        return 0
    if CostModel.parse(model) is CostModel.TIME:
        return max(moves)
    return sum(moves)


def _perfect_matching(allowed) -> list | None:
    """Kuhn's augmenting paths on a boolean k x k matrix; returns row -> column or None."""
    k = len(allowed)
    match_col = [-1] * k

    def augment(i, seen):
        for j in range(k):
            if allowed[i][j] and not seen[j]:
                seen[j] = True
                if match_col[j] < 0 or augment(match_col[j], seen):
                    match_col[j] = i
                    return True
        return False

    for i in range(k):
        if not augment(i, [False] * k):
            return None
    assignment = [0] * k
    for j, i in enumerate(match_col):
        assignment[i] = j
    return assignment


def bottleneck_matching(space: MetricSpace, a, b):
    """Bijection minimizing the largest matched distance.

    Returns ``(cost, assignment)`` where ``a[i]`` is matched to ``b[assignment[i]]``.
    Binary search over the distinct pairwise distances; feasibility of a
    threshold is a perfect bipartite matching on the pairs within it.
    """
    k = len(a)
    if k != len(b):
        raise InvalidParameter("configurations have different numbers of servers")
    if k == 0:
        return 0, []
    dist = [[space.d(x, y) for y in b] for x in a]
    values = sorted({v for row in dist for v in row})
    lo, hi = 0, len(values) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        t = values[mid]
        match = _perfect_matching([[v <= t for v in row] for row in dist])
        if match is not None:
            best = (t, match)
            hi = mid - 1
        else:
            lo = mid + 1
    return best


def bottleneck_cost(space: MetricSpace, a, b):
    return bottleneck_matching(space, a, b)[0]


def assignment_matching(space: MetricSpace, a, b):
    """Min-sum bijection (distance model); cost recomputed exactly from the assignment."""
    k = len(a)
    if k != len(b):
        raise InvalidParameter("configurations have different numbers of servers")
    if k == 0:
        return 0, []
    exact = [[space.d(x, y) for y in b] for x in a]
    rows, cols = linear_sum_assignment(np.array(exact, dtype=float))
    assignment = [0] * k
    for i, j in zip(rows, cols):
        assignment[i] = int(j)
    return sum(exact[i][assignment[i]] for i in range(k)), assignment


def assignment_cost(space: MetricSpace, a, b):
    return assignment_matching(space, a, b)[0]


def transition_cost(space: MetricSpace, a, b, model=CostModel.TIME):
    """Cheapest unlabeled move from multiset a to multiset b."""
    if CostModel.parse(model) is CostModel.TIME:
        return bottleneck_cost(space, a, b)
    return assignment_cost(space, a, b)


def relabel(space: MetricSpace, current, target, model=CostModel.TIME) -> tuple:
    """Order the points of ``target`` so that label i of ``current`` moves optimally."""
    if CostModel.parse(model) is CostModel.TIME:
        _, assignment = bottleneck_matching(space, current, target)
    else:
        _, assignment = assignment_matching(space, current, target)
    target = tuple(target)
    return tuple(target[j] for j in assignment)


def schedule_cost(model, inst: Instance, sched):
    """Cost of a labeled schedule; raises InvalidSchedule at the first uncovered request."""
    sched = [tuple(c) for c in sched]
    if len(sched) != len(inst.requests):
        raise InvalidParameter(f"schedule has {len(sched)} configurations for {len(inst.requests)} requests")
    total = 0
    prev = inst.initial
    for j, (conf, r) in enumerate(zip(sched, inst.requests)):
        if len(conf) != inst.k:
            raise InvalidParameter(f"configuration {j} has {len(conf)} servers")
        if not covers(conf, r):
            raise InvalidSchedule(j)
        total += step_cost(inst.space, prev, conf, model)
        prev = conf
    return total


def as_fraction(x) -> Fraction:
    return Fraction(x)
