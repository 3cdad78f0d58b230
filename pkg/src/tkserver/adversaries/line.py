"""k+1 lower bound on the line and on even cycles.

OPT sits on k integers of one parity, at least two of them 2 apart.  A phase
requests k integers of the other parity, each next to one of OPT's servers,
so OPT pays 1 per phase while every request is distant for the algorithm and
one of them is at distance at least 2.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InternalError, InvalidParameter
from ..metric import CycleSpace, LineSpace, build_cycle
from .base import Adversary, Request


@dataclass
class Range:
    start: int          # first OPT position of the segment
    size: int           # k_m
    points: list        # the size+1 odd integers within distance < 2 of the segment
    requested: int = 0


class LineAdversary(Adversary):
    key = "line"

    def __init__(self, k, phases=1, space=None, initial=None, cycle=None):
        if k < 2:
            raise InvalidParameter("the line construction needs k >= 2")
        if space is None:
            space = LineSpace() if cycle is None else build_cycle(int(cycle))
        if isinstance(space, CycleSpace):
            if space.n < 2 * k + 6:
                raise InvalidParameter(f"cycle must have at least 2k+6 = {2 * k + 6} vertices")
            self.modulus = space.n
        elif isinstance(space, LineSpace):
            self.modulus = None
        else:
            raise InvalidParameter("line adversary needs a line or cycle space")
        initial = tuple(initial) if initial is not None else tuple(2 * i for i in range(1, k + 1))
        super().__init__(space, initial, phases)
        self._check_start(initial)

    def _norm(self, x):
        return x % self.modulus if self.modulus else x

    def _check_start(self, conf):
        if len(conf) != self.k or len(set(conf)) != self.k:
            raise InvalidParameter("start needs k distinct integers")
        if any(int(p) != p or not self.space.contains(p) for p in conf):
            raise InvalidParameter("start positions must be integers of the space")
        if len({int(p) % 2 for p in conf}) != 1:
            raise InvalidParameter("start positions must share one parity")
        if not any(self._norm(p + 2) in set(conf) for p in conf):
            raise InvalidParameter("two start positions must be 2 apart")

    def segments(self, positions):
        """Maximal runs of positions spaced by exactly 2, as (start, size)."""
        pos = set(int(p) for p in positions)
        starts = sorted(p for p in pos if self._norm(p - 2) not in pos)
        runs = []
        for s in starts:
            size, p = 1, s
            while self._norm(p + 2) in pos:
                p = self._norm(p + 2)
                size += 1
            runs.append((s, size))
        return runs

    def _ranges(self, positions):
        ranges = []
        for s, size in self.segments(positions):
            pts = [self._norm(s - 1 + 2 * j) for j in range(size + 1)]
            ranges.append(Range(s, size, pts))
        return ranges

    def _play(self):
        k = self.k
        for _ in range(self.phases):
            self._begin_phase()
            ranges = self._ranges(self._opt)
            r1 = next(r for r in ranges if r.size >= 2)
            one, three = r1.points[0], r1.points[1]
            where = {p: r for r in ranges for p in r.points}
            requested = []

            def quota(r, selecting):
                return r.size - 1 if (selecting and r is r1) else r.size

            def ask(p):
                requested.append(p)
                where[p].requested += 1
                yield Request(p)
                yield from self._enforce(requested)

            yield from ask(three)
            # selection procedure: distant points, R_1 one short, never the integer 1
            while len(requested) < k - 1:
                cand = [p for r in ranges if r.requested < quota(r, True) for p in r.points
                        if p not in requested and p != one and self._min_dist(p) >= 1]
                if not cand:
                    break
                yield from ask(min(cand))
            # a point of R_1 at distance >= 2 from every server
            open_r1 = [p for p in r1.points if p not in requested]
            far = [p for p in open_r1 if self._min_dist(p) >= 2]
            if far:
                yield from ask(min(far))
            else:
                self._flag("no point at distance 2 in the first range")
                yield from ask(max(open_r1, key=lambda p: (self._min_dist(p), -p)))
            while len(requested) < k:
                open_pts = [p for r in ranges if r.requested < r.size for p in r.points if p not in requested]
                cand = [p for p in open_pts if self._min_dist(p) >= 1]
                if cand:
                    yield from ask(min(cand))
                else:
                    self._flag("no distant point left in an unsaturated range")
                    yield from ask(max(open_pts, key=lambda p: (self._min_dist(p), -p)))
            self._check_phase(requested)
            yield from self._close_phase(tuple(requested))

    def _check_phase(self, requested):
        if len(set(requested)) != self.k:
            raise InternalError("phase did not request k distinct points")
        if len({int(p) % 2 for p in requested}) != 1 or int(requested[0]) % 2 == int(self._opt[0]) % 2:
            raise InternalError("phase points do not have the opposite parity")
        if not any(self._norm(p + 2) in set(requested) for p in requested):
            raise InternalError("no two phase points are 2 apart")
