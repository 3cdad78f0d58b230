"""Adversary constructions and the registry used by the harness and CLI."""
from __future__ import annotations

import inspect
from fractions import Fraction

from ..errors import InvalidParameter
from .base import DONE, PHASE_END, Adversary, ObliviousAdversary, Request
from .double_cycle import ChainAdversary, DoubleCycleAdversary
from .layered import (LayeredAdversary, RandomLayeredAdversary, RandomLayeredParams,
                      sample_random_layered_phase, subphase_end_probability)
from .line import LineAdversary
from .strict_line import RandomStrictLineAdversary, StrictLineAdversary, sample_strict_line
from .uniform import UniformAdversary

ADVERSARIES = {cls.key: cls for cls in (
    UniformAdversary, LineAdversary, DoubleCycleAdversary, ChainAdversary,
    StrictLineAdversary, LayeredAdversary, RandomStrictLineAdversary, RandomLayeredAdversary,
)}

# keys whose requests are drawn at random (and therefore accept a seed)
RANDOMIZED = {"rand-strict-line", "rand-layered"}


def _coerce(name, value):
    if name == "delta" and value is not None:
        return Fraction(str(value))
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def make_adversary(key: str, params: dict | None = None, phases: int = 1, seed=None, rng=None) -> Adversary:
    try:
        cls = ADVERSARIES[key]
    except KeyError:
        raise InvalidParameter(f"unknown adversary {key!r}; choose from {sorted(ADVERSARIES)}") from None
    params = {k: _coerce(k, v) for k, v in dict(params or {}).items()}
    accepted = set(inspect.signature(cls.__init__).parameters) - {"self"}
    unknown = set(params) - accepted
    if unknown:
        raise InvalidParameter(f"adversary {key!r} does not take {sorted(unknown)}")
    kwargs = dict(params, phases=phases)
    if key in RANDOMIZED:
        kwargs["seed"] = seed
        if rng is not None:
            kwargs["rng"] = rng
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise InvalidParameter(f"bad parameters for {key!r}: {exc}") from None


__all__ = [
    "ADVERSARIES", "Adversary", "ChainAdversary", "DONE", "DoubleCycleAdversary", "LayeredAdversary",
    "LineAdversary", "ObliviousAdversary", "PHASE_END", "RANDOMIZED", "RandomLayeredAdversary",
    "RandomLayeredParams", "RandomStrictLineAdversary", "Request", "StrictLineAdversary",
    "UniformAdversary", "make_adversary", "sample_random_layered_phase", "sample_strict_line",
    "subphase_end_probability",
]
