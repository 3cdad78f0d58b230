"""Experiment runner: algorithm-versus-adversary matches and Monte Carlo estimates."""
from __future__ import annotations

import csv
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .adversaries import DONE, PHASE_END, RandomLayeredAdversary, make_adversary
from .algorithms import make_algorithm
from .core import CostModel, Instance, step_cost
from .errors import InternalError, InvalidParameter, Unsupported
from .metric import LineSpace, build_path
from .offline import DEFAULT_STATE_CAP, opt_cost_dp, verify_schedule

OPT_MODES = ("cert", "dp", "both")
CSV_COLUMNS = ["run_id", "algorithm", "adversary", "k", "phases", "alg_cost", "cert_opt",
               "dp_opt", "ratio", "flags", "seed"]


def fmt(x) -> str | None:
    """Exact rendering of a rational: '3', '5/2'."""
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal(x, places=6) -> str | None:
    return None if x is None else f"{float(Fraction(x)):.{places}f}"


def harmonic(k: int) -> Fraction:
    if k < 1:
        raise InvalidParameter("harmonic number needs k >= 1")
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


def discretize_line_instance(inst: Instance):
    """Map an integer instance on the line onto a path covering its span plus 2 on each side.

    Returns the path instance and the offset (line point x is path vertex x - offset).
    """
    pts = list(inst.initial) + list(inst.requests)
    if any(Fraction(p).denominator != 1 for p in pts):
        raise Unsupported("only integer line instances can be discretized")
    lo, hi = int(min(pts)) - 2, int(max(pts)) + 2
    path = build_path(hi - lo + 1, offset=lo)
    conv = lambda p: int(p) - lo  # noqa: E731
    return Instance(path, tuple(map(conv, inst.initial)), tuple(map(conv, inst.requests))), lo


def exact_opt(inst: Instance, model=CostModel.TIME, state_cap=DEFAULT_STATE_CAP):
    if isinstance(inst.space, LineSpace):
        inst, _ = discretize_line_instance(inst)
    return opt_cost_dp(inst, model, state_cap)


@dataclass
class RunReport:
    algorithm: str
    adversary: str
    params: dict
    k: int
    phases: int
    phase_costs: list
    alg_cost: Fraction
    cert_opt: Fraction
    dp_opt: Fraction | None
    flags: list
    seed: int | None
    wall_time: float = 0.0
    transcript: list = field(default_factory=list, repr=False)

    @property
    def ratio(self):
        opts = [x for x in (self.cert_opt, self.dp_opt) if x is not None]
        best = min(opts) if opts else None
        if not best:
            return None
        return Fraction(self.alg_cost) / Fraction(best)

    def to_dict(self, timing=False) -> dict:
        out = {
            "algorithm": self.algorithm,
            "adversary": self.adversary,
            "params": self.params,
            "k": self.k,
            "phases": self.phases,
            "phase_costs": [fmt(c) for c in self.phase_costs],
            "alg_cost": fmt(self.alg_cost),
            "cert_opt": fmt(self.cert_opt),
            "dp_opt": fmt(self.dp_opt),
            "ratio": fmt(self.ratio),
            "ratio_decimal": decimal(self.ratio),
            "flags": self.flags,
            "seed": self.seed,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self, timing=False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def csv_row(self, run_id=None) -> dict:
        return {
            "run_id": run_id or f"{self.adversary}:{self.algorithm}:{self.seed}",
            "algorithm": self.algorithm,
            "adversary": self.adversary,
            "k": self.k,
            "phases": self.phases,
            "alg_cost": fmt(self.alg_cost),
            "cert_opt": fmt(self.cert_opt),
            "dp_opt": fmt(self.dp_opt),
            "ratio": fmt(self.ratio),
            "flags": len(self.flags),
            "seed": self.seed,
        }


def play(adv, alg):
    """Drive the request-answer loop; returns (per-phase costs, transcript)."""
    costs, current, transcript = [], 0, []
    while True:
        event = adv.next(alg.config)
        if event is DONE:
            break
        if event is PHASE_END:
            costs.append(current)
            current = 0
            continue
        prev = alg.config
        alg.serve(event.point)
        c = step_cost(adv.space, prev, alg.config, CostModel.TIME)
        current += c
        transcript.append((event.point, alg.config, c))
    return costs, transcript


def run_match(algorithm: str, adversary: str, params: dict | None = None, phases: int = 1, seed=None,
              opt_mode: str = "cert", state_cap: int = DEFAULT_STATE_CAP) -> RunReport:
    if opt_mode not in OPT_MODES:
        raise InvalidParameter(f"opt mode must be one of {OPT_MODES}")
    if phases < 0:
        raise InvalidParameter("phases must be nonnegative")
    params = dict(params or {})
    t0 = time.perf_counter()
    adv = make_adversary(adversary, params, phases, seed)
    alg = make_algorithm(algorithm, adv.space, adv.initial, seed)
    costs, transcript = play(adv, alg)
    inst = adv.instance()
    cert = verify_schedule(inst, adv.certificate())
    if cert != sum(adv.phase_cert_costs):
        raise InternalError("certificate cost disagrees with the per-phase moves")
    dp = None
    if opt_mode in ("dp", "both"):
        dp = exact_opt(inst, CostModel.TIME, state_cap).cost
        if dp > cert:
            raise InternalError("exact optimum exceeds the certificate")
    return RunReport(algorithm, adversary, params, adv.k, adv.completed_phases, costs, sum(costs, 0),
                     cert, dp, list(adv.flags), seed, time.perf_counter() - t0, transcript)


def write_csv(reports, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for i, rep in enumerate(reports):
            writer.writerow(rep.csv_row(f"run{i:04d}"))


# ---------------------------------------------------------------------------
# Monte Carlo (Yao) estimation
# ---------------------------------------------------------------------------

DISTRIBUTIONS = ("rand-strict-line", "rand-layered", "fixed")


@dataclass
class Sample:
    index: int
    alg_cost: Fraction
    cert_cost: Fraction
    units: int
    first_covered: list = field(default_factory=list)
    draws: list = field(default_factory=list)


def sample_seed(master_seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(master_seed), int(index)])


def _run_sample(dist, params, algorithm, master_seed, index) -> Sample:
    params = dict(params)
    rng = np.random.default_rng(sample_seed(master_seed, index))
    if dist == "fixed":
        adv = make_adversary(params["adversary"], params.get("params", {}), int(params.get("phases", 1)))
        units = max(adv.phases, 1)
    else:
        phases = int(params.pop("phases", 1))
        adv = make_adversary(dist, params, phases, rng=rng)
        units = adv.units
    alg = make_algorithm(algorithm, adv.space, adv.initial)
    costs, _ = play(adv, alg)
    cert = verify_schedule(adv.instance(), adv.certificate())
    sample = Sample(index, Fraction(sum(costs, 0)), Fraction(cert), units)
    if isinstance(adv, RandomLayeredAdversary):
        sample.first_covered = [r.first_covered for r in adv.records]
        sample.draws = [d for r in adv.records for d in r.draws]
    return sample


def _run_chunk(args):
    dist, params, algorithm, master_seed, indices = args
    return [_run_sample(dist, params, algorithm, master_seed, i) for i in indices]


@dataclass
class YaoReport:
    distribution: str
    params: dict
    algorithm: str
    samples: int
    master_seed: int
    units_per_sample: int
    mean: Fraction          # mean ALG cost per unit (pair or phase)
    std: float              # sample standard deviation of per-unit cost
    stderr: float
    ci99: tuple
    mean_cert: Fraction     # mean certificate cost per unit
    per_sample: list = field(repr=False, default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ratio(self):
        return self.mean / self.mean_cert if self.mean_cert else None

    def to_dict(self) -> dict:
        return {
            "distribution": self.distribution,
            "params": {k: (fmt(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()},
            "algorithm": self.algorithm,
            "samples": self.samples,
            "seed": self.master_seed,
            "units_per_sample": self.units_per_sample,
            "mean": fmt(self.mean),
            "mean_decimal": decimal(self.mean),
            "std": round(self.std, 9),
            "stderr": round(self.stderr, 9),
            "ci99": [round(x, 9) for x in self.ci99],
            "mean_cert": fmt(self.mean_cert),
            "ratio": fmt(self.ratio),
            "ratio_decimal": decimal(self.ratio),
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def yao_estimate(dist: str, params: dict, algorithm: str, samples: int, master_seed: int = 0,
                 workers: int = 1) -> YaoReport:
    """Estimate an algorithm's expected cost on a request distribution.

    Sample i uses its own seed derived from (master_seed, i), and results are
    merged by index, so the report does not depend on ``workers``.
    """
    if dist not in DISTRIBUTIONS:
        raise InvalidParameter(f"unknown distribution {dist!r}; choose from {list(DISTRIBUTIONS)}")
    if samples <= 0:
        raise InvalidParameter("samples must be positive")
    params = dict(params or {})
    if workers <= 1:
        results = _run_chunk((dist, params, algorithm, master_seed, range(samples)))
    else:
        step = math.ceil(samples / (4 * workers))
        chunks = [(dist, params, algorithm, master_seed, range(i, min(i + step, samples)))
                  for i in range(0, samples, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [s for chunk in pool.map(_run_chunk, chunks) for s in chunk]
    results.sort(key=lambda s: s.index)
    units = results[0].units
    per_unit = [s.alg_cost / s.units for s in results]
    mean = sum(per_unit, Fraction(0)) / samples
    mean_cert = sum((s.cert_cost / s.units for s in results), Fraction(0)) / samples
    std = statistics.stdev([float(x) for x in per_unit]) if samples > 1 else 0.0
    stderr = std / math.sqrt(samples)
    z = statistics.NormalDist().inv_cdf(0.995)
    ci = (float(mean) - z * stderr, float(mean) + z * stderr)
    extra = {}
    if dist == "rand-layered":
        extra = _layered_stats(results, int(params["k"]))
    return YaoReport(dist, params, algorithm, samples, master_seed, units, mean, std, stderr, ci,
                     mean_cert, results, extra)


def _layered_stats(results, k) -> dict:
    covered = [c for s in results for c in s.first_covered]
    stats = {"first_covered_rate": sum(covered) / len(covered), "subphases": {}}
    for sub in range(1, k):
        draws = [ended for s in results for (t, ended) in s.draws if t == sub]
        stats["subphases"][str(sub)] = {
            "draws": len(draws),
            "ends": sum(draws),
            "expected": fmt(Fraction(k + 1 - sub, k + 1)),
        }
    return stats
