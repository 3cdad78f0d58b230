"""Acceptance criteria: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
from __future__ import annotations

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from conftest import random_connected_graph

from tkserver.adversaries import make_adversary
from tkserver.algorithms import make_algorithm
from tkserver.core import CostModel, Instance, bottleneck_cost, step_cost
from tkserver.harness import exact_opt, harmonic, play, yao_estimate
from tkserver.metric import (build_double_cycle, build_double_cycle_chain, build_layered,
                             build_layered_random, check_layered_claims, diameter)
from tkserver.offline import brute_force_opt, opt_cost_dp, work_function

RESULTS = {}


def report(number, title, ok, detail, elapsed, limit):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title} ({detail}; {elapsed:.1f}s < {limit}s: {within})"
    RESULTS[number] = line
    return line, ok and within


@pytest.fixture
def emit(capsys):
    def _emit(*args):
        line, ok = report(*args)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return _emit


def match(alg_key, adv_key, params, phases, seed=0):
    adv = make_adversary(adv_key, params, phases, seed)
    alg = make_algorithm(alg_key, adv.space, adv.initial, seed)
    costs, _ = play(adv, alg)
    return adv, costs


# -- 1 ------------------------------------------------------------------------

def test_criterion_01_structure(emit):
    t0 = time.perf_counter()
    got = {}
    for k in (2, 3):
        g = build_layered(k)
        got[f"layered{k}"] = (g.n, g.edge_count, diameter(g))
    dc = build_double_cycle()
    ch = build_double_cycle_chain(4)
    got["double-cycle"] = (dc.n, dc.edge_count)
    got["chain4"] = (ch.n, ch.edge_count)
    want = {"layered2": (18, 48, 3), "layered3": (252, 3888, 3), "double-cycle": (12, 24), "chain4": (28, 53)}
    emit(1, "structure counts and diameters", got == want, f"got {got}", time.perf_counter() - t0, 10)


# -- 2 ------------------------------------------------------------------------

def test_criterion_02_block_adjacency(emit):
    t0 = time.perf_counter()
    spaces = [build_layered(2), build_layered(3)] + [build_layered_random(2, N, materialize=True)
                                                     for N in (2, 3, 4)]
    problems = [p for s in spaces for p in check_layered_claims(s, s.spec)]
    emit(2, "block adjacency properties (layered k=2,3; random k=2, N=2..4)", not problems,
         f"{len(problems)} violations", time.perf_counter() - t0, 60)


# -- 3 ------------------------------------------------------------------------

def test_criterion_03_robin_uniform(emit):
    t0 = time.perf_counter()
    ok, details = True, []
    for k in (2, 3, 4):
        adv, costs = match("robin", "uniform", {"k": k}, 100)
        alg = sum(costs)
        dp = exact_opt(adv.instance()).cost
        ok &= k * dp - k <= alg <= k * dp + k
        details.append(f"k={k}: alg={alg} dp={dp}")
    emit(3, "Robin on a uniform space within k*OPT +- k", ok, ", ".join(details), time.perf_counter() - t0, 60)


# -- 4 ------------------------------------------------------------------------

def test_criterion_04_line(emit):
    t0 = time.perf_counter()
    ok, details = True, []
    for k in (2, 3):
        for alg_key in ("greedy", "dc-line", "robin"):
            adv, costs = match(alg_key, "line", {"k": k}, 50)
            ok &= len(costs) == 50 and min(costs) >= k + 1
            ok &= all(c == 1 for c in adv.phase_cert_costs)
            details.append(f"{alg_key} k={k} min={min(costs)}")
    adv, _ = match("greedy", "line", {"k": 2}, 3)
    dp = exact_opt(adv.instance()).cost
    ok &= dp == 3
    details.append(f"dp(k=2, 3 phases)={dp}")
    emit(4, "line construction: phase cost >= k+1, certificate 1", ok, ", ".join(details),
         time.perf_counter() - t0, 120)


# -- 5 ------------------------------------------------------------------------

def test_criterion_05_double_cycle(emit):
    t0 = time.perf_counter()
    ok, details = True, []
    for adv_key, params, bound in (("double-cycle", {}, 3), ("chain", {"k": 4}, 6)):
        for alg_key in ("greedy", "robin"):
            adv, costs = match(alg_key, adv_key, params, 20)
            ok &= len(costs) == 20 and min(costs) >= bound
            ok &= all(c == 1 for c in adv.phase_cert_costs)
            details.append(f"{adv_key}/{alg_key} min={min(costs)}")
    emit(5, "double cycle >= 3 and chain(k=4) >= 6 per phase", ok, ", ".join(details),
         time.perf_counter() - t0, 60)


# -- 6 ------------------------------------------------------------------------

def test_criterion_06_strict_line(emit):
    t0 = time.perf_counter()
    ok, details = True, []
    for k in (2, 4):
        for alg_key in ("greedy", "robin"):
            adv, costs = match(alg_key, "strict-line", {"k": k}, 1)
            total = sum(costs)
            ok &= total >= Fraction(5 * k, 4) and adv.phase_cert_costs == [1]
            details.append(f"{alg_key} k={k} total={total}")
    emit(6, "strict line: ALG >= 5k/4 against certificate 1", ok, ", ".join(details),
         time.perf_counter() - t0, 10)


# -- 7 ------------------------------------------------------------------------

def test_criterion_07_layered(emit):
    t0 = time.perf_counter()
    ok, details = True, []
    for k in (2, 3):
        for alg_key in ("greedy", "robin"):
            adv, costs = match(alg_key, "layered", {"k": k}, 10)
            ok &= len(costs) == 10 and min(costs) >= 2 * k - 1
            ok &= all(c == 1 for c in adv.phase_cert_costs)
            details.append(f"{alg_key} k={k} min={min(costs)}")
            if k == 2:
                dp = exact_opt(adv.instance()).cost
                ok &= dp == sum(adv.phase_cert_costs)
                details.append(f"dp={dp}")
    emit(7, "layered construction: phase cost >= 2k-1", ok, ", ".join(details), time.perf_counter() - t0, 300)


# -- 8 ------------------------------------------------------------------------

def test_criterion_08_random_strict_line(emit):
    t0 = time.perf_counter()
    delta = Fraction(1, 10)
    rep = yao_estimate("rand-strict-line", {"k": 2, "delta": delta, "N": 20}, "greedy", 10_000, 0, workers=4)
    bound = Fraction(5, 3) - delta / 6
    ok = float(rep.mean) - 3 * rep.stderr >= bound and rep.mean_cert == 1
    emit(8, "random strict line: mean per pair >= 5/3 - delta/6 - 3 SE", ok,
         f"mean={float(rep.mean):.4f} se={rep.stderr:.4f} bound={float(bound):.4f}", time.perf_counter() - t0, 120)


# -- 9 ------------------------------------------------------------------------

def layered_threshold(k, delta):
    """(1 - eps')(k + H_k - 1) with eps' = 1 - (1 - delta)^2."""
    eps = 1 - (1 - delta) ** 2
    return (1 - eps) * (k + harmonic(k) - 1)


def test_criterion_09_random_layered(emit):
    t0 = time.perf_counter()
    k, N, m, delta = 2, 40, 4, Fraction(1, 20)
    threshold = layered_threshold(k, delta)
    # oracle: (1 - 1/20)^2 * 5/2 = 361/160 = 2.25625, and m = 4 suffices because (1/3)^3 <= 1/20
    assert threshold == Fraction(361, 160) and threshold >= Fraction(9, 4)
    assert Fraction(k - 1, k + 1) ** (m - 1) <= delta and Fraction(k, N) <= delta
    rep = yao_estimate("rand-layered", {"k": k, "N": N, "m": m, "delta": delta, "phases": 1},
                       "greedy", 10_000, 0, workers=4)
    ok = float(rep.mean) - 3 * rep.stderr >= 2.25 and rep.mean_cert == 1
    details = [f"mean={float(rep.mean):.4f} se={rep.stderr:.4f} threshold={float(threshold)}"]
    for s, st in rep.extra["subphases"].items():
        p = float(Fraction(st["expected"]))
        n = st["draws"]
        sigma = math.sqrt(n * p * (1 - p))
        ok &= abs(st["ends"] - n * p) <= 3 * sigma
        details.append(f"subphase {s}: {st['ends']}/{n} vs p={p:.4f}")
    emit(9, "random layered: mean per phase >= 2.25 - 3 SE, subphase ends within 3 sigma", ok,
         ", ".join(details), time.perf_counter() - t0, 600)


# -- 10 -----------------------------------------------------------------------

def test_criterion_10_oracles(emit):
    t0 = time.perf_counter()
    rng = np.random.default_rng(10)
    bad = 0
    for _ in range(1000):
        k = int(rng.integers(1, 5))
        g = random_connected_graph(rng, int(rng.integers(k, 9)), p=0.3)
        a = tuple(int(x) for x in rng.integers(g.n, size=k))
        b = tuple(int(x) for x in rng.integers(g.n, size=k))
        brute = min(max(g.d(a[i], b[p[i]]) for i in range(k)) for p in itertools.permutations(range(k)))
        bad += bottleneck_cost(g, a, b) != brute
    dp_bad = 0
    for i in range(200):
        g = random_connected_graph(rng, int(rng.integers(2, 6)))
        initial = tuple(int(x) for x in rng.integers(g.n, size=2))
        reqs = tuple(int(x) for x in rng.integers(g.n, size=int(rng.integers(1, 5))))
        inst = Instance(g, initial, reqs)
        model = CostModel.TIME if i % 2 == 0 else CostModel.DISTANCE
        dp_bad += opt_cost_dp(inst, model).cost != brute_force_opt(inst, model)
    wf_bad = 0
    for _ in range(100):
        g = random_connected_graph(rng, int(rng.integers(3, 8)))
        k = int(rng.integers(1, 4))
        initial = tuple(int(x) for x in rng.integers(g.n, size=k))
        reqs = tuple(int(x) for x in rng.integers(g.n, size=int(rng.integers(1, 9))))
        inst = Instance(g, initial, reqs)
        wf_bad += work_function(inst).minimum() != opt_cost_dp(inst).cost
    ok = bad == dp_bad == wf_bad == 0
    emit(10, "oracles: bottleneck, DP and work function", ok,
         f"mismatches bottleneck={bad} dp={dp_bad} wf={wf_bad}", time.perf_counter() - t0, 120)


# -- 11 -----------------------------------------------------------------------

def test_criterion_11_model_relation(emit):
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    bad = 0
    for _ in range(300):
        g = random_connected_graph(rng, int(rng.integers(2, 8)), p=0.3)
        k = int(rng.integers(1, 4))
        a = tuple(int(x) for x in rng.integers(g.n, size=k))
        b = tuple(int(x) for x in rng.integers(g.n, size=k))
        t, d = step_cost(g, a, b, CostModel.TIME), step_cost(g, a, b, CostModel.DISTANCE)
        bad += not (t <= d <= k * t)
    for _ in range(100):
        g = random_connected_graph(rng, int(rng.integers(2, 7)), p=0.3)
        k = int(rng.integers(1, 4))
        initial = tuple(int(x) for x in rng.integers(g.n, size=k))
        inst = Instance(g, initial, tuple(int(x) for x in rng.integers(g.n, size=int(rng.integers(1, 10)))))
        t, d = opt_cost_dp(inst, CostModel.TIME).cost, opt_cost_dp(inst, CostModel.DISTANCE).cost
        bad += not (t <= d <= k * t)
    emit(11, "Time <= Distance <= k * Time for steps and optima", bad == 0, f"{bad} violations",
         time.perf_counter() - t0, 60)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
