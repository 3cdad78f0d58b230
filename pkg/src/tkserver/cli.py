"""Command line interface: gen, run, yao, opt and check."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .core import CostModel, Instance
from .errors import InvalidParameter, KServerError, TooLarge, Unsupported
from .harness import OPT_MODES, exact_opt, fmt, run_match, write_csv, yao_estimate
from .metric import (GENERATORS, LineSpace, bfs_distances, check_layered_claims, check_metric_axioms,
                     expected_counts, from_json, generate, spec_for, to_json)

log = logging.getLogger("tkserver")

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_TOO_LARGE = 0, 1, 2, 3


def _json_arg(text):
    if text is None:
        return {}
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"parameters are not valid JSON: {exc}") from None
    if not isinstance(value, dict):
        raise InvalidParameter("parameters must be a JSON object")
    return value


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_instance(path) -> Instance:
    with open(path) as fh:
        doc = json.load(fh)
    try:
        space_doc, initial, requests = doc["space"], doc["initial"], doc.get("requests", [])
    except (KeyError, TypeError):
        raise InvalidParameter("instance needs 'space' and 'initial'") from None
    if space_doc.get("kind") == "line" and "vertices" not in space_doc:
        space = LineSpace(space_doc.get("lo"), space_doc.get("hi"))
        conv = lambda p: Fraction(str(p))  # noqa: E731
    else:
        space = from_json(space_doc)
        conv = space.index
    return Instance(space, tuple(map(conv, initial)), tuple(map(conv, requests)))


def cmd_gen(args):
    space = generate(args.space, _json_arg(args.params))
    _emit(json.dumps(to_json(space)), args.output)
    return EXIT_OK


def cmd_run(args):
    report = run_match(args.alg, args.adv, _json_arg(args.params), args.phases, args.seed, args.opt)
    _emit(report.to_json(timing=args.timing), args.output)
    if args.csv:
        write_csv([report], args.csv)
    return EXIT_OK


def cmd_yao(args):
    report = yao_estimate(args.dist, _json_arg(args.params), args.alg, args.samples, args.seed, args.workers)
    _emit(report.to_json(), args.output)
    return EXIT_OK


def cmd_opt(args):
    inst = _load_instance(args.instance)
    result = exact_opt(inst, CostModel.parse(args.model), args.state_cap)
    out = {"cost": fmt(result.cost), "states": result.states_explored}
    if args.schedule:
        if isinstance(inst.space, LineSpace):
            out["schedule"] = [[fmt(p) for p in conf] for conf in _undiscretize(inst, result.schedule)]
        else:
            out["schedule"] = [[inst.space.name(p) for p in conf] for conf in result.schedule]
    print(json.dumps(out))
    return EXIT_OK


def _undiscretize(inst, schedule):
    pts = list(inst.initial) + list(inst.requests)
    lo = int(min(pts)) - 2
    return [tuple(p + lo for p in conf) for conf in schedule]


def cmd_check(args):
    with open(args.space) as fh:
        space = from_json(json.load(fh))
    results = {}
    mat = space.matrix
    results["bfs"] = all(list(mat[v]) == bfs_distances(space, v) for v in range(space.n))
    results["metric_axioms"] = not check_metric_axioms(space, 1000, seed=0)
    expected = expected_counts(space)
    if expected is not None:
        results["counts"] = expected == (space.n, space.edge_count)
    spec = spec_for(space)
    if spec is not None:
        results["block_properties"] = not check_layered_claims(space, spec)
    ok = all(results.values())
    print(json.dumps({"vertices": space.n, "edges": space.edge_count, "checks": results, "ok": ok}))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tkserver", description="Time-optimal k-server simulator")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a metric space as a JSON graph")
    g.add_argument("space", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="?", help='JSON object, e.g. \'{"k": 2}\'')
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="play an algorithm against an adversary")
    r.add_argument("--alg", required=True)
    r.add_argument("--adv", required=True)
    r.add_argument("--params", default="{}")
    r.add_argument("--phases", type=int, default=10)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--opt", choices=OPT_MODES, default="cert")
    r.add_argument("--timing", action="store_true", help="include wall time in the report")
    r.add_argument("--csv", help="also append a CSV summary row to this file")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_run)

    y = sub.add_parser("yao", help="Monte Carlo estimate on a request distribution")
    y.add_argument("--dist", required=True)
    y.add_argument("--params", default="{}")
    y.add_argument("--alg", required=True)
    y.add_argument("--samples", type=int, default=1000)
    y.add_argument("--seed", type=int, default=0)
    y.add_argument("--workers", type=int, default=1)
    y.add_argument("-o", "--output")
    y.set_defaults(func=cmd_yao)

    o = sub.add_parser("opt", help="exact offline optimum of an instance")
    o.add_argument("--instance", required=True)
    o.add_argument("--model", choices=[m.value for m in CostModel], default="time")
    o.add_argument("--state-cap", type=int, default=5_000_000)
    o.add_argument("--schedule", action="store_true")
    o.set_defaults(func=cmd_opt)

    c = sub.add_parser("check", help="run structural validators on a JSON graph")
    c.add_argument("--space", required=True)
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except TooLarge as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InvalidParameter, Unsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KServerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
