"""Online algorithms: each ``serve`` call returns a labeled configuration covering the request."""
from __future__ import annotations

import random

import numpy as np

from .core import CostModel, check_config, covers, relabel
from .errors import InvalidParameter, Unsupported
from .metric import LineSpace
from .offline import DEFAULT_STATE_CAP, WorkFunction


class OnlineAlgorithm:
    key = "abstract"

    def __init__(self, space, initial, seed=None):
        self.space = space
        self.config = check_config(space, initial)
        self.rng = random.Random(seed)

    @property
    def k(self) -> int:
        return len(self.config)

    def serve(self, request) -> tuple:
        if not self.space.contains(request):
            raise InvalidParameter(f"request {request!r} is not in the space")
        if not covers(self.config, request):
            self.config = tuple(self._move(request))
        return self.config

    def _move(self, request):
        raise NotImplementedError


class Robin(OnlineAlgorithm):
    """Lazy round robin: the m-th forced move is made by server ((m-1) mod k) alone."""

    key = "robin"

    def __init__(self, space, initial, seed=None):
        super().__init__(space, initial, seed)
        self.m = 0

    def _move(self, request):
        self.m += 1
        i = (self.m - 1) % self.k
        conf = list(self.config)
        conf[i] = request
        return conf


class Greedy(OnlineAlgorithm):
    """Move the nearest server; ties go to the lowest label."""

    key = "greedy"

    def _move(self, request):
        dists = [self.space.d(p, request) for p in self.config]
        i = dists.index(min(dists))
        conf = list(self.config)
        conf[i] = request
        return conf


class DoubleCoverage(OnlineAlgorithm):
    """Double coverage on the line: the neighbours on both sides approach at equal speed."""

    key = "dc-line"

    def __init__(self, space, initial, seed=None):
        if not isinstance(space, LineSpace):
            raise Unsupported("double coverage is only defined on the line")
        super().__init__(space, initial, seed)

    def _move(self, x):
        conf = list(self.config)
        left = [i for i, p in enumerate(conf) if p < x]
        right = [i for i, p in enumerate(conf) if p > x]
        # nearest on each side; among co-located servers the lowest label moves
        li = min(left, key=lambda i: (-conf[i], i)) if left else None
        ri = min(right, key=lambda i: (conf[i], i)) if right else None
        if li is None or ri is None:
            conf[ri if li is None else li] = x
            return conf
        step = min(x - conf[li], conf[ri] - x)
        conf[li] += step
        conf[ri] -= step
        return conf


class WorkFunctionTime(OnlineAlgorithm):
    """Experimental time-model work function algorithm.

    After updating the work function with request r it moves to the
    multiconfig X containing r that minimizes w(X) + bottleneck(current, X);
    ties go to the first X in canonical order.
    """

    key = "wfa-time"

    def __init__(self, space, initial, seed=None, state_cap=DEFAULT_STATE_CAP):
        super().__init__(space, initial, seed)
        self.wf = WorkFunction(space, self.config, CostModel.TIME, state_cap)

    def serve(self, request):
        if not self.space.contains(request):
            raise InvalidParameter(f"request {request!r} is not in the space")
        values = self.wf.update(request)
        ss = self.wf.ss
        cand = ss.covering(request)
        here = ss.lookup(self.config)
        scores = values[cand] + ss.table[here, cand]
        target = ss.state(int(cand[int(np.argmin(scores))]))
        self.config = relabel(self.space, self.config, target, CostModel.TIME)
        return self.config


ALGORITHMS = {cls.key: cls for cls in (Robin, Greedy, DoubleCoverage, WorkFunctionTime)}


def make_algorithm(key: str, space, initial, seed=None) -> OnlineAlgorithm:
    try:
        cls = ALGORITHMS[key]
    except KeyError:
        raise InvalidParameter(f"unknown algorithm {key!r}; choose from {sorted(ALGORITHMS)}") from None
    return cls(space, initial, seed=seed)
