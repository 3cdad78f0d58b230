"""Layered-graph constructions: deterministic 2k-1 and the randomized k+H_k-1 distribution.

OPT holds a hub and k-1 fringe points of distinct groups in one block.  That
choice of fringe points names a block c of the next layer; every phase
requests a hub and k-1 fringe points of distinct groups in c, which OPT
reaches with one unit move.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import InternalError, InvalidParameter
from ..metric import build_layered, build_layered_random
from .base import Adversary, Request


def _start(spec):
    """Hub 0 and the fringe points of choice 0 in block 0 of layer 0."""
    missing, chosen = spec.decode_choice(0)
    conf = [spec.vertex(0, 0, 0, 0)] + [spec.vertex(0, 0, g, n) for g, n in sorted(chosen.items())]
    return tuple(conf)


class _LayeredState:
    def __init__(self):
        self.layer = 0
        self.choice = 0  # encodes OPT's fringe points, hence names the next block

    def advance(self, spec, groups):
        missing = next(g for g in range(1, spec.k + 1) if g not in groups)
        self.choice = spec.encode_choice(missing, groups)
        self.layer = (self.layer + 1) % 3


class LayeredAdversary(Adversary):
    key = "layered"

    def __init__(self, k, phases=1, space=None):
        if k < 2:
            raise InvalidParameter("the layered construction needs k >= 2")
        space = space if space is not None else build_layered(k)
        self.spec = space.spec
        super().__init__(space, _start(self.spec), phases)
        self.state = _LayeredState()
        self.min_fringe_distance = []

    def _play(self):
        sp, k = self.spec, self.k
        for _ in range(self.phases):
            self._begin_phase()
            layer, c = (self.state.layer + 1) % 3, self.state.choice
            hub = sp.vertex(layer, c, 0, 0)
            requested = [hub]
            yield Request(hub)
            yield from self._enforce(requested)
            groups = {}
            for _ in range(k - 1):
                cands = [sp.vertex(layer, c, g, n) for g in range(1, k + 1) if g not in groups
                         for n in range(sp.fringe_size)]
                far = [v for v in cands if self._min_dist(v) >= 2]
                if far:
                    v = far[0]
                elif self._covered_all(requested):
                    raise InternalError("no fringe point at distance 2 although the phase points are covered")
                else:
                    self._flag("fringe request at distance below 2")
                    v = max(cands, key=lambda u: (self._min_dist(u), -u))
                self.min_fringe_distance.append(self._min_dist(v))
                _, _, g, n = sp.coords(v)
                groups[g] = n
                requested.append(v)
                yield Request(v)
                yield from self._enforce(requested)
            self.state.advance(sp, groups)
            yield from self._close_phase(tuple(requested))

    def _covered_all(self, points):
        return all(self._covered(p) for p in points)


# ---------------------------------------------------------------------------
# randomized distribution
# ---------------------------------------------------------------------------

@dataclass
class RandomLayeredParams:
    k: int
    N: int
    m: int
    delta: Fraction = None
    eps_prime: Fraction = field(init=False)

    def __post_init__(self):
        k, N, m = self.k, self.N, self.m
        if k < 2:
            raise InvalidParameter("k must be at least 2")
        if N < k:
            raise InvalidParameter(f"N={N} must be at least k={k}")
        if m < 1:
            raise InvalidParameter("m must be positive")
        if self.delta is None:
            self.delta = Fraction(k, N)
        self.delta = Fraction(self.delta)
        if Fraction(k, N) > self.delta:
            raise InvalidParameter("k/N must not exceed delta")
        if Fraction(k - 1, k + 1) ** (m - 1) > self.delta:
            raise InvalidParameter("m too small: ((k-1)/(k+1))^(m-1) exceeds delta")
        if N * N < k * (k - 1):
            warnings.warn("N^2 < k(k-1): the cost analysis does not apply")
        self.eps_prime = 1 - (1 - self.delta) ** 2

    @property
    def blocks(self) -> int:
        return self.k * self.N ** (self.k - 1)

    def bound(self) -> Fraction:
        """(1 - eps') (k + H_k - 1), the per-phase expectation the analysis guarantees."""
        h = sum(Fraction(1, j) for j in range(1, self.k + 1))
        return (1 - self.eps_prime) * (self.k + h - 1)


@lru_cache(maxsize=4)
def _random_space(k, N):
    return build_layered_random(k, N, materialize=False)


@dataclass
class PhaseRecord:
    requests: list
    first_covered: bool
    # (subphase s, ended) for every non-forced draw
    draws: list
    forced: int


class RandomLayeredAdversary(Adversary):
    """Samples phases of the randomized layered distribution (requests do not depend on ALG)."""

    key = "rand-layered"

    def __init__(self, k, N, m, phases=1, delta=None, seed=None, rng=None, space=None):
        self.params = RandomLayeredParams(int(k), int(N), int(m), delta)
        space = space if space is not None else _random_space(self.params.k, self.params.N)
        self.spec = space.spec
        super().__init__(space, _start(self.spec), phases)
        self.rng = rng if rng is not None else np.random.default_rng(seed)
        self.state = _LayeredState()
        self.records = []
        self.units = phases

    def _play(self):
        for _ in range(self.phases):
            self._begin_phase()
            yield from self._phase()

    def _phase(self):
        sp, k, N, m, rng = self.spec, self.params.k, self.params.N, self.params.m, self.rng
        layer, c = (self.state.layer + 1) % 3, self.state.choice
        hub = sp.vertex(layer, c, 0, int(rng.integers(N)))
        record = PhaseRecord([hub], self._covered(hub), [], 0)
        picked = {0: hub}
        groups = {}
        yield Request(hub)
        for s in range(1, k):
            for step in range(1, m + 1):
                if step == m:
                    unused = [g for g in range(1, k + 1) if g not in picked]
                    g = unused[int(rng.integers(len(unused)))]
                    record.forced += 1
                else:
                    g = int(rng.integers(k + 1))
                    record.draws.append((s, g not in picked))
                    if g in picked:
                        record.requests.append(picked[g])
                        yield Request(picked[g])
                        continue
                n = int(rng.integers(N))
                v = sp.vertex(layer, c, g, n)
                picked[g], groups[g] = v, n
                record.requests.append(v)
                yield Request(v)
                break
        self.records.append(record)
        self.state.advance(sp, groups)
        target = tuple(picked[g] for g in sorted(picked))
        yield from self._close_phase(target)


def subphase_end_probability(k, s) -> Fraction:
    return Fraction(k + 1 - s, k + 1)


def default_m(k, delta) -> int:
    """Smallest m with ((k-1)/(k+1))^(m-1) <= delta."""
    delta = Fraction(delta)
    m = 1
    while Fraction(k - 1, k + 1) ** (m - 1) > delta:
        m += 1
    return m


def sample_random_layered_phase(adversary: RandomLayeredAdversary, alg):
    """Play the next phase of ``adversary`` against ``alg``; returns (record, alg cost)."""
    from ..core import step_cost

    cost = 0
    while True:
        event = adversary.next(alg.config)
        if not isinstance(event, Request):
            break
        prev = alg.config
        alg.serve(event.point)
        cost += step_cost(adversary.space, prev, alg.config)
    return adversary.records[-1], cost
