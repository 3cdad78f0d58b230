"""Double cycle (k=2, ratio 3) and the double cycle chain (ratio 3k/2).

Vertex pairs {A_p, B_p} are indexed by p in 0..5 (0-based).  OPT holds one
server in pair i and one in pair i+2.  The "odd" pairs i-1, i+1, i+3 are each
at distance 1 from OPT; each phase requests one point from two of them.
"""
from __future__ import annotations

from ..errors import InvalidParameter
from ..metric import build_double_cycle, build_double_cycle_chain, chain_vertex
from .base import Adversary, Request


class ChainAdversary(Adversary):
    key = "chain"

    def __init__(self, k, phases=1, space=None):
        if k < 2 or k % 2:
            raise InvalidParameter("the double cycle chain needs an even k >= 2")
        self.gadgets = k // 2
        if space is None:
            space = build_double_cycle() if k == 2 else build_double_cycle_chain(k)
        initial = []
        for g in range(self.gadgets):
            initial += [chain_vertex(g, 1, 1), chain_vertex(g, 1, 3)]  # B2, B4
        super().__init__(space, tuple(initial), phases)
        self.shift = [1] * self.gadgets
        self.regions = [self._region(g) for g in range(self.gadgets)]

    def _region(self, g):
        """Gadget g plus the two path vertices on its side of each attached path."""
        verts = set(range(12 * g, 12 * g + 12))
        base = 12 * self.gadgets
        if g > 0:
            verts |= {base + 4 * (g - 1) + 2, base + 4 * (g - 1) + 3}
        if g < self.gadgets - 1:
            verts |= {base + 4 * g, base + 4 * g + 1}
        return verts

    @staticmethod
    def pair_of(v):
        return v % 6

    def _pick_gadget(self, done):
        for g in range(self.gadgets):
            if g not in done and sum(1 for s in self.alg if s in self.regions[g]) <= 2:
                return g
        self._flag("no gadget with at most two algorithm servers nearby")
        return min(g for g in range(self.gadgets) if g not in done)

    def _first_request(self, g, opts):
        i = self.shift[g]
        far = [v for v in opts if self._min_dist(v) >= 2]
        if far:
            return far[0]
        # every odd pair is within reach: the servers sit on two distinct even pairs
        even = {(i + 2 * j) % 6 for j in range(3)}
        held = {self.pair_of(s) for s in self.alg if 12 * g <= s < 12 * g + 12 and self.pair_of(s) in even}
        for o in sorted({(i - 1) % 6, (i + 1) % 6, (i + 3) % 6}):
            if (o - 1) % 6 in held and (o + 1) % 6 in held:
                return chain_vertex(g, 0, o)
        self._flag("gadget configuration outside the case analysis")
        return max(opts, key=lambda v: (self._min_dist(v), -v))

    def _play(self):
        for _ in range(self.phases):
            self._begin_phase()
            done, requested = set(), []
            for _ in range(self.gadgets):
                g = self._pick_gadget(done)
                done.add(g)
                i = self.shift[g]
                odd = [(i - 1) % 6, (i + 1) % 6, (i + 3) % 6]
                opts = sorted(chain_vertex(g, letter, p) for p in odd for letter in (0, 1))
                first = self._first_request(g, opts)
                requested.append(first)
                yield Request(first)
                yield from self._enforce(requested)
                x = self.pair_of(first)
                others = [v for v in opts if self.pair_of(v) != x]
                second = max(others, key=lambda v: (self._min_dist(v), -v))
                requested.append(second)
                yield Request(second)
                yield from self._enforce(requested)
                y = self.pair_of(second)
                self.shift[g] = x if (y - x) % 6 == 2 else y
            yield from self._close_phase(tuple(requested))


class DoubleCycleAdversary(ChainAdversary):
    key = "double-cycle"

    def __init__(self, phases=1, k=2):
        if k != 2:
            raise InvalidParameter("the double cycle construction is for k = 2")
        super().__init__(2, phases)
