"""Command-line interface.

Subcommands: generate, simulate, solve, classify, discharge, rate,
render.  All output is deterministic JSON (sorted keys, rationals as
"p/q").  Exit codes: 0 ok, 2 input/hypothesis error, 3 timeout/partial.
"""
from __future__ import annotations

import argparse
import json
import pathlib
import sys
from fractions import Fraction

from . import classify, discharge, engine, families, formats, rates, render
from . import strategies
from .engine import Schedule
from .errors import BadParameter, FireContainError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TIMEOUT = 3


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="path to a graph file")
    p.add_argument("--format", choices=formats.FORMATS,
                   help="input file format")
    p.add_argument("--family",
                   help="family spec, e.g. star:5, rect_grid:4,5, cube")
    p.add_argument("--allow-unverified", action="store_true",
                   help="accept formats without embedding data (graph6)")


def _add_schedule_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, help="constant per-round budget")
    p.add_argument("--schedule",
                   help="first,rest budgets, e.g. 4,3")


def _parse_schedule(args) -> Schedule:
    if args.schedule:
        f, s = (int(x) for x in args.schedule.split(","))
        return Schedule(f, s)
    if args.k is not None:
        return Schedule.constant(args.k)
    raise BadParameter("need --k or --schedule")


def _load_graph(args):
    if bool(args.input) == bool(args.family):
        raise BadParameter("need exactly one of --input or --family")
    if args.family:
        return families.generate(families.parse_family(args.family))
    if not args.format:
        raise BadParameter("--input needs --format")
    data = pathlib.Path(args.input).read_bytes()
    graphs = formats.parse(data, args.format,
                           allow_unverified=args.allow_unverified)
    if len(graphs) != 1:
        raise BadParameter(f"input contains {len(graphs)} graphs, need 1")
    return graphs[0]


def _emit(obj, args) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if getattr(args, "out", None):
        path = pathlib.Path(args.out)
        path.mkdir(parents=True, exist_ok=True)
        (path / "result.json").write_text(text + "\n")
    else:
        print(text)


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="firecontain",
        description="Firefighter processes on embedded planar graphs")
    ap.add_argument("--config", help="JSON file with default flag values")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a family instance")
    _add_source_args(p)
    p.add_argument("--output-format", choices=formats.FORMATS,
                   default="rotation_json")
    p.add_argument("--out", help="output directory")

    p = sub.add_parser("simulate", help="run a strategy")
    _add_source_args(p)
    _add_schedule_args(p)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--strategy", default="null",
                   choices=["null", "greedy", "hex", "rect"])
    p.add_argument("--out")

    p = sub.add_parser("solve", help="exact maximum save count")
    _add_source_args(p)
    _add_schedule_args(p)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--node-limit", type=int, default=10_000_000)
    p.add_argument("--out")

    p = sub.add_parser("classify", help="X/Y vertex classification")
    _add_source_args(p)
    p.add_argument("--context", required=True,
                   choices=["girth5", "planar", "trianglefree"])
    p.add_argument("--mode", default="exact",
                   choices=["rules_only", "exact"])
    p.add_argument("--node-limit", type=int, default=2_000_000)
    p.add_argument("--out")

    p = sub.add_parser("discharge", help="charge transfer audit")
    _add_source_args(p)
    p.add_argument("--context", required=True,
                   choices=["planar", "trianglefree"])
    p.add_argument("--alpha", help="exact rational, e.g. 1/872")
    p.add_argument("--beta", help="exact rational")
    p.add_argument("--out")

    p = sub.add_parser("rate", help="surviving rate / theorem certificate")
    _add_source_args(p)
    _add_schedule_args(p)
    p.add_argument("--theorem", choices=list(rates.THEOREMS))
    p.add_argument("--node-limit", type=int, default=10_000_000)
    p.add_argument("--out")

    p = sub.add_parser("render", help="SVG images of a stored trace")
    _add_source_args(p)
    p.add_argument("--trace", required=True, help="trace JSON file")
    p.add_argument("--out", required=True, help="output directory")

    args = ap.parse_args(argv)
    if args.config:
        defaults = json.loads(pathlib.Path(args.config).read_text())
        for key, value in defaults.items():
            attr = key.replace("-", "_")
            if getattr(args, attr, None) in (None, False):
                setattr(args, attr, value)
    try:
        return _dispatch(args)
    except FireContainError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                         sort_keys=True), file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "generate":
        g = _load_graph(args)
        if args.output_format == "rotation_json":
            payload = formats.encode_rotation_json(g).decode()
        elif args.output_format == "planar_code":
            payload = formats.encode_planar_code([g]).hex()
        else:
            payload = formats.encode_graph6(g).decode()
        _emit({"n": g.n, "edges": g.num_edges,
               "format": args.output_format, "payload": payload}, args)
        return EXIT_OK

    if cmd == "simulate":
        g = _load_graph(args)
        sched = _parse_schedule(args)
        strat = _pick_strategy(args.strategy, g, args.start)
        trace = engine.run_simulation(g, args.start, sched, strat)
        _emit(trace.to_json(), args)
        return EXIT_OK

    if cmd == "solve":
        g = _load_graph(args)
        sched = _parse_schedule(args)
        res = engine.sn_exact(g, args.start, sched,
                              node_limit=args.node_limit)
        _emit({"value": res.value, "optimal": res.optimal,
               "nodes": res.nodes,
               "trace": None if res.trace is None else res.trace.to_json()},
              args)
        return EXIT_OK if res.optimal else EXIT_TIMEOUT

    if cmd == "classify":
        g = _load_graph(args)
        fn = {"girth5": classify.classify_girth5,
              "planar": classify.classify_planar,
              "trianglefree": classify.classify_triangle_free}[args.context]
        if args.context == "girth5":
            report = fn(g)
        else:
            report = fn(g, mode=args.mode, node_limit=args.node_limit)
        _emit(report.to_json(), args)
        unknown = any(ev.get("rule") == "exact_unknown"
                      for ev in report.evidence.values())
        return EXIT_TIMEOUT if unknown else EXIT_OK

    if cmd == "discharge":
        g = _load_graph(args)
        if args.context == "planar":
            alpha = _parse_fraction(args.alpha) if args.alpha \
                else discharge.PLANAR_ALPHA
            report = classify.classify_planar(g)
            ledger = discharge.transfer_planar(
                g, discharge.init_planar_charges(g, alpha), report)
            audit = discharge.audit_planar(g, ledger, report)
        else:
            alpha = _parse_fraction(args.alpha) if args.alpha \
                else discharge.TF_ALPHA
            beta = _parse_fraction(args.beta) if args.beta else None
            report = classify.classify_triangle_free(g)
            ledger = discharge.transfer_tf(
                g, discharge.init_tf_charges(g, alpha, beta), report)
            audit = discharge.audit_tf(g, ledger, report)
        _emit(audit.to_json(ledger.transfers), args)
        return EXIT_OK

    if cmd == "rate":
        g = _load_graph(args)
        if args.theorem:
            cert = rates.certify_bound(g, args.theorem,
                                       instance=args.family or args.input,
                                       node_limit=args.node_limit)
            _emit(cert.to_json(), args)
            return EXIT_OK
        sched = _parse_schedule(args)
        report = rates.surviving_rate_exact(
            g, sched, node_limit=args.node_limit,
            instance=args.family or args.input)
        _emit(report.to_json(), args)
        return EXIT_TIMEOUT if report.partial else EXIT_OK

    if cmd == "render":
        g = _load_graph(args)
        obj = json.loads(pathlib.Path(args.trace).read_text())
        trace = engine.SimTrace.from_json(obj, g.n)
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for rno, svg in enumerate(render.render_trace(g, trace)):
            (out / f"round_{rno:02d}.svg").write_text(svg + "\n")
        print(json.dumps({"rounds": len(trace.rounds),
                          "dir": str(out)}, sort_keys=True))
        return EXIT_OK

    raise BadParameter(f"unknown command {cmd!r}")


def _pick_strategy(name: str, g, start):
    if name == "null":
        return engine.null_strategy
    if name == "greedy":
        return engine.greedy_frontier_strategy("degree")
    strat = (strategies.hex_containment_strategy() if name == "hex"
             else strategies.rect_containment_strategy())
    strat.require(g, start)
    return strat.decide


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
