"""Request-answer game scaffolding shared by every adversary.

An adversary is driven by calling ``next(alg_config)`` with the algorithm's
current configuration.  It answers with a ``Request``, the ``PHASE_END``
marker, or ``DONE``.  Internally each construction is a generator (``_play``)
that reads ``self.alg`` whenever it needs the algorithm's live positions.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..core import Instance, bottleneck_matching
from ..errors import InvalidParameter


@dataclass(frozen=True)
class Request:
    point: object


class _Marker:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


PHASE_END = _Marker("PHASE_END")
DONE = _Marker("DONE")


class Adversary:
    key = "abstract"
    # re-request rounds allowed per phase, as a multiple of k
    REREQUEST_FACTOR = 4

    def __init__(self, space, initial, phases):
        if phases < 0:
            raise InvalidParameter("phases must be nonnegative")
        self.space = space
        self.initial = tuple(initial)
        self.k = len(self.initial)
        self.phases = phases
        self.requests = []
        self.phase_starts = []
        self.phase_cert_costs = []
        self.completed_phases = 0
        self.flags = []
        self.alg = None
        self._opt = self.initial
        self._cert = []
        self._budget = 0
        self._gen = None

    # -- driver ---------------------------------------------------------------

    def next(self, alg_config):
        self.alg = tuple(alg_config)
        if self._gen is None:
            self._gen = self._play()
        try:
            event = next(self._gen)
        except StopIteration:
            return DONE
        if isinstance(event, Request):
            self.requests.append(event.point)
        return event

    def _play(self):
        raise NotImplementedError

    # -- helpers for constructions -----------------------------------------------

    def _begin_phase(self):
        self.phase_starts.append(len(self.requests))
        self._budget = self.REREQUEST_FACTOR * self.k

    def _flag(self, reason):
        self.flags.append({"phase": len(self.phase_starts), "reason": reason})

    def _covered(self, p) -> bool:
        return any(q == p for q in self.alg)

    def _min_dist(self, p):
        return min(self.space.d(p, q) for q in self.alg)

    def _enforce(self, points):
        """Re-request phase points the algorithm has abandoned, within the phase budget."""
        while True:
            missing = [p for p in points if not self._covered(p)]
            if not missing:
                return
            if self._budget <= 0:
                self._flag("re-request cap reached")
                return
            self._budget -= 1
            yield Request(missing[0])

    def _close_phase(self, target):
        """Move OPT to ``target`` at the phase start and fill in the certificate."""
        cost, assignment = bottleneck_matching(self.space, self._opt, target)
        labeled = tuple(tuple(target)[j] for j in assignment)
        start = self.phase_starts[-1]
        self._cert.extend([labeled] * (len(self.requests) - start))
        self.phase_cert_costs.append(cost)
        self._opt = labeled
        self.completed_phases += 1
        yield PHASE_END

    # -- results ----------------------------------------------------------------

    @property
    def opt_config(self):
        return self._opt

    def certificate(self) -> list:
        return list(self._cert)

    def instance(self) -> Instance:
        """Instance made of the requests of completed phases."""
        return Instance(self.space, self.initial, tuple(self.requests[:len(self._cert)]))


class ObliviousAdversary(Adversary):
    """Plays a request list fixed in advance; ``target`` closes the single phase."""

    def __init__(self, space, initial, requests, target):
        super().__init__(space, initial, 1)
        self._planned = list(requests)
        self._target = tuple(target)

    def _play(self):
        self._begin_phase()
        for p in self._planned:
            yield Request(p)
        yield from self._close_phase(self._target)
