"""Uniform lower bound: always request an uncovered vertex of a (k+1)-set."""
from __future__ import annotations

from collections import deque

from ..core import bottleneck_cost
from ..errors import InvalidParameter
from ..metric import build_clique
from .base import Adversary, Request


def _connected(space, S) -> bool:
    S = set(S)
    start = min(S)
    seen, queue = {start}, deque([start])
    while queue:
        u = queue.popleft()
        for v in space.adj[u]:
            if v in S and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen == S


class UniformAdversary(Adversary):
    """Requests the lowest vertex of S not covered by the algorithm; phases of k requests.

    The certificate moves OPT once per phase to a configuration of k distinct
    vertices of S covering the phase.  Any two such configurations are one
    synchronous unit move apart (shift along a path in S between the two holes).
    """

    key = "uniform"

    def __init__(self, k, n=None, phases=1, space=None, S=None):
        if k < 1:
            raise InvalidParameter("k must be positive")
        if space is None:
            space = build_clique(n if n is not None else k + 1)
        S = sorted(S) if S is not None else list(range(k + 1))
        if len(S) != k + 1 or len(set(S)) != k + 1 or not all(space.contains(v) for v in S):
            raise InvalidParameter("S must consist of k+1 distinct vertices")
        if not _connected(space, S):
            raise InvalidParameter("S must induce a connected subgraph")
        self.S = S
        super().__init__(space, tuple(S[:k]), phases)

    def _play(self):
        for _ in range(self.phases):
            self._begin_phase()
            start = len(self.requests)
            for _ in range(self.k):
                yield Request(next(v for v in self.S if not self._covered(v)))
            block = set(self.requests[start:])
            options = [tuple(v for v in self.S if v != hole) for hole in self.S if hole not in block]
            target = min(options, key=lambda c: (bottleneck_cost(self.space, self._opt, c), c))
            yield from self._close_phase(target)
