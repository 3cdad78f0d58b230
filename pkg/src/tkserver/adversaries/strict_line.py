"""Strict lower bounds on the line: deterministic 5k/4 and the randomized 5k/6 distribution.

Servers come in k/2 pairs; pair i starts at i*d - 1 and i*d + 1 around its hub
i*d.  Each pair receives two of the three points hub-2, hub, hub+2, which OPT
covers with a single unit move of both servers.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import InvalidParameter
from ..metric import LineSpace
from .base import Adversary, ObliviousAdversary, Request


def _pair_layout(k):
    if k < 2 or k % 2:
        raise InvalidParameter("the strict line constructions need an even k >= 2")
    d = 2 * k + 4
    hubs = [i * d for i in range(1, k // 2 + 1)]
    initial = []
    for h in hubs:
        initial += [h - 1, h + 1]
    return hubs, tuple(initial)


class StrictLineAdversary(Adversary):
    """One-shot instance of k requests, two per pair, chosen against the live configuration."""

    key = "strict-line"

    def __init__(self, k, phases=1):
        self.hubs, initial = _pair_layout(k)
        super().__init__(LineSpace(), initial, 1)
        self.pair_starts = []

    def _pair(self, hub):
        """Offsets of the two servers nearest to the hub, as (x, y) with |x| <= |y|."""
        offs = sorted((Fraction(p) - hub for p in self.alg), key=lambda o: (abs(o), o))[:2]
        return offs[0], offs[1]

    def _play(self):
        self._begin_phase()
        targets = []
        for hub in self.hubs:
            x, y = self._pair(hub)
            self.pair_starts.append((x, y))
            if abs(x) >= Fraction(1, 2):
                first = hub
                yield Request(first)
                z = self._pair(hub)[1]  # the idle server after the hub was covered
                second = hub - 2 if z > 0 else hub + 2
            else:
                s = 1 if y >= 0 else -1
                first = hub - 2 * s
                yield Request(first)
                opts = [hub, hub + 2 * s]
                good = [p for p in opts if self._min_dist(p) >= 1]
                if good:
                    second = good[0]
                else:
                    self._flag("no second point at distance 1")
                    second = max(opts, key=lambda p: self._min_dist(p))
            yield Request(second)
            targets += [first, second]
        yield from self._close_phase(tuple(targets))


def sample_strict_line(k, delta, N, rng):
    """Draw one instance of the randomized distribution.

    Returns ``(initial, requests, target)``; ``target`` is OPT's configuration
    after its single unit move.
    """
    delta = Fraction(delta)
    if delta <= 0 or N * delta < 2:
        raise InvalidParameter("need delta > 0 and N * delta >= 2")
    hubs, initial = _pair_layout(k)
    requests, target = [], []
    for h in hubs:
        if rng.random() < 0.5:
            branch = int(rng.integers(3))
            if branch == 2:
                seq = [h] + [h + delta if j % 2 == 0 else h for j in range(N)]
                pts = [h, h + delta]
            else:
                pts = [h, h + 2 if branch == 0 else h - 2]
                seq = list(pts)
        else:
            first = h + 2 if rng.random() < 0.5 else h - 2
            rest = [p for p in (h - 2, h, h + 2) if p != first]
            second = rest[int(rng.integers(2))]
            seq = [first, second]
            pts = [first, second]
        requests += seq
        target += sorted(pts)
    return initial, requests, tuple(target)


class RandomStrictLineAdversary(ObliviousAdversary):
    key = "rand-strict-line"

    def __init__(self, k, delta=Fraction(1, 10), N=20, seed=None, rng=None, phases=1):
        rng = rng if rng is not None else np.random.default_rng(seed)
        initial, requests, target = sample_strict_line(k, delta, int(N), rng)
        super().__init__(LineSpace(), initial, requests, target)
        self.units = k // 2
