"""Exact offline optimum by dynamic programming over unlabeled configurations.

The state space is every multiset of ``k`` vertices.  Transition costs are the
bottleneck matching cost (time model) or the min-sum assignment cost
(distance model); both are label-invariant, so unlabeled states suffice.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import CostModel, Instance, relabel, schedule_cost, transition_cost
from .errors import InvalidParameter, TooLarge, Unsupported
from .metric import GraphSpace

# bound on |states|^2, the size of the transition table
DEFAULT_STATE_CAP = 5_000_000
# up to this k the transition table is built by enumerating permutations
PERMUTATION_LIMIT = 5


def state_count(n: int, k: int) -> int:
    return math.comb(n + k - 1, k)


class StateSpace:
    """All multiconfigs of ``k`` servers on a graph plus the full transition table."""

    def __init__(self, space: GraphSpace, k: int, model: CostModel):
        self.space, self.k, self.model = space, k, model
        self.states = np.array(list(itertools.combinations_with_replacement(range(space.n), k)),
                               dtype=np.int64).reshape(-1, k)
        self.index = {tuple(int(x) for x in s): i for i, s in enumerate(self.states)}
        self.table = self._build_table()
        self._cover = {}

    def __len__(self):
        return len(self.states)

    def _build_table(self) -> np.ndarray:
        D = self.space.matrix.astype(np.int64)
        S, k = self.states.shape
        if k > PERMUTATION_LIMIT:
            table = np.empty((S, S), dtype=np.int64)
            for i, a in enumerate(self.states):
                for j, b in enumerate(self.states):
                    table[i, j] = transition_cost(self.space, a.tolist(), b.tolist(), self.model)
            return table
        combine = np.maximum if self.model is CostModel.TIME else np.add
        table = None
        for perm in itertools.permutations(range(k)):
            cost = D[self.states[:, None, 0], self.states[None, :, perm[0]]]
            for i in range(1, k):
                cost = combine(cost, D[self.states[:, None, i], self.states[None, :, perm[i]]])
            table = cost if table is None else np.minimum(table, cost)
        return table

    def covering(self, point) -> np.ndarray:
        """Indices of states that contain ``point``."""
        if point not in self._cover:
            self._cover[point] = np.flatnonzero((self.states == point).any(axis=1))
        return self._cover[point]

    def state(self, i) -> tuple:
        return tuple(int(x) for x in self.states[i])

    def lookup(self, config) -> int:
        return self.index[tuple(sorted(int(p) for p in config))]


@lru_cache(maxsize=16)
def _cached_states(space, k, model):
    return StateSpace(space, k, model)


def get_state_space(space, k: int, model=CostModel.TIME, state_cap: int = DEFAULT_STATE_CAP) -> StateSpace:
    if not isinstance(space, GraphSpace) or getattr(space, "materialized", True) is False:
        raise Unsupported("the exact optimum needs a finite, materialized graph space")
    S = state_count(space.n, k)
    if S * S > state_cap:
        raise TooLarge(f"{S} configurations ({S * S} transitions) exceed the cap {state_cap}")
    return _cached_states(space, k, CostModel.parse(model))


@dataclass
class OptResult:
    cost: int
    schedule: list
    states_explored: int


def opt_cost_dp(inst: Instance, model=CostModel.TIME, state_cap: int = DEFAULT_STATE_CAP) -> OptResult:
    """Exact optimum with one optimal labeled schedule recovered by backtracking."""
    model = CostModel.parse(model)
    ss = get_state_space(inst.space, inst.k, model, state_cap)
    T = ss.table
    start = ss.lookup(inst.initial)
    if not inst.requests:
        return OptResult(0, [], len(ss))
    # layer t holds costs only for states covering r_t
    cols = ss.covering(inst.requests[0])
    cost = T[start, cols].copy()
    parents = []
    for r in inst.requests[1:]:
        nxt = ss.covering(r)
        sub = cost[:, None] + T[np.ix_(cols, nxt)]
        arg = sub.argmin(axis=0)
        parents.append((cols, arg))
        cost = sub[arg, np.arange(len(nxt))]
        cols = nxt
    best = int(cost.argmin())
    total = int(cost[best])
    path = [int(cols[best])]
    pos = best
    for prev_cols, arg in reversed(parents):
        pos = int(arg[pos])
        path.append(int(prev_cols[pos]))
    path.reverse()
    schedule, current = [], inst.initial
    for s in path:
        current = relabel(inst.space, current, ss.state(s), model)
        schedule.append(current)
    return OptResult(total, schedule, len(ss))


class WorkFunction:
    """Incrementally maintained work function over all multiconfigs."""

    def __init__(self, space, initial, model=CostModel.TIME, state_cap: int = DEFAULT_STATE_CAP):
        self.model = CostModel.parse(model)
        self.ss = get_state_space(space, len(initial), self.model, state_cap)
        self.values = self.ss.table[self.ss.lookup(initial)].copy()
        self.t = 0

    def update(self, request) -> np.ndarray:
        rows = self.ss.covering(request)
        self.values = (self.values[rows, None] + self.ss.table[rows]).min(axis=0)
        self.t += 1
        return self.values

    def value(self, config) -> int:
        return int(self.values[self.ss.lookup(config)])


@dataclass
class WorkFunctionTable:
    states: list
    layers: list  # layers[t][i] = w_t(states[i])

    def value(self, t, config) -> int:
        return int(self.layers[t][self.states.index(tuple(sorted(config)))])

    def minimum(self, t=None) -> int:
        return int(self.layers[-1 if t is None else t].min())


def work_function(inst: Instance, model=CostModel.TIME, state_cap: int = DEFAULT_STATE_CAP) -> WorkFunctionTable:
    wf = WorkFunction(inst.space, inst.initial, model, state_cap)
    layers = [wf.values.copy()]
    for r in inst.requests:
        layers.append(wf.update(r).copy())
    return WorkFunctionTable([wf.ss.state(i) for i in range(len(wf.ss))], layers)


def verify_schedule(inst: Instance, sched, model=CostModel.TIME):
    """Cost of ``sched`` if every configuration covers its request (InvalidSchedule otherwise)."""
    return schedule_cost(model, inst, sched)


def brute_force_opt(inst: Instance, model=CostModel.TIME):
    """Enumerate every labeled schedule whose configurations cover their requests.

    Exponential in the number of requests; only for tiny test instances.
    """
    pts = list(inst.space.points())
    options = []
    for r in inst.requests:
        layer = [c for c in itertools.product(pts, repeat=inst.k) if r in c]
        if not layer:
            raise InvalidParameter("no configuration covers a request")
        options.append(layer)
    best = None
    for sched in itertools.product(*options):
        cost = schedule_cost(model, inst, sched)
        if best is None or cost < best:
            best = cost
    return 0 if best is None else best
