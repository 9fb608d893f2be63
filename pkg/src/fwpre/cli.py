"""Command-line front end: ``fwpre {parse,analyze,optimize,run,verify}``.

Exit codes: 0 success, 1 parse error, 2 runtime error, 3 schedule bound
exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .interpreter import (
    DEFAULT_FUEL,
    RunError,
    ScheduleBoundError,
    parse_schedule,
    run,
)
from .modified import concurrent_modified, modified_analysis
from .parser import ParseError, parse
from .pre_analysis import analyze
from .printer import one_line, pretty_print
from .syntax import Assign, Fork, If, Seq, Skip, While, iter_stmts
from .transform import optimize
from .verify import verify

EXIT_OK, EXIT_PARSE, EXIT_RUNTIME, EXIT_BOUND, EXIT_FAIL = 0, 1, 2, 3, 4


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read(), "<stdin>"
    with open(path, encoding="utf-8") as f:
        return f.read(), path


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")


def _load(args):
    text, name = _read(args.input)
    try:
        return parse(text)
    except ParseError as err:
        print(f"{name}:{err.line}:{err.column}: {err.message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _keys(exprs):
    return sorted(e.key for e in exprs)


def ast_json(s) -> dict:
    node = {"id": s.node_id}
    if isinstance(s, Assign):
        node.update(kind="assign", target=s.target, expr=str(s.expr))
    elif isinstance(s, Skip):
        node.update(kind="skip")
    elif isinstance(s, Seq):
        node.update(kind="seq", first=ast_json(s.first), second=ast_json(s.second))
    elif isinstance(s, If):
        node.update(kind="if", cond=str(s.cond), then=ast_json(s.then), orelse=ast_json(s.orelse))
    elif isinstance(s, While):
        node.update(kind="while", cond=str(s.cond), body=ast_json(s.body))
    elif isinstance(s, Fork):
        node.update(kind="fork", threads=[ast_json(t) for t in s.threads])
    if s.span is not None:
        node["span"] = [s.span.start, s.span.end]
    return node


def analysis_json(p, point=None) -> dict:
    mods = modified_analysis(p)
    conc = concurrent_modified(p, mods)
    ann = analyze(p)
    nodes = {}
    for s in iter_stmts(p.body):
        nid = s.node_id
        if point is not None and nid != point:
            continue
        nodes[str(nid)] = {
            "kind": type(s).__name__.lower(),
            "stmt": one_line(s),
            "mPre": sorted(mods[nid][0]),
            "mPost": sorted(mods[nid][1]),
            "C": sorted(conc[nid]),
            "mce": _keys(ann.blacklist[nid]),
            "antPre": _keys(ann.ant_pre(nid)),
            "antPost": _keys(ann.ant_post(nid)),
            "cpavPre": _keys(ann.cpav_pre(nid)),
            "cpavPost": _keys(ann.cpav_post(nid)),
        }
        if nid in ann.loop_head:
            nodes[str(nid)]["cpavLoopHead"] = _keys(ann.loop_head[nid])
    return {"universe": [e.key for e in ann.universe], "nodes": nodes}


def cmd_parse(args):
    p = _load(args)
    if args.ast_json:
        _write(json.dumps(ast_json(p.body), indent=2), args.output)
    else:
        _write(pretty_print(p), args.output)
    return EXIT_OK


def cmd_analyze(args):
    p = _load(args)
    if args.point is not None and args.point not in p.nodes:
        print(f"no node with id {args.point}", file=sys.stderr)
        return EXIT_RUNTIME
    _write(json.dumps(analysis_json(p, args.point), indent=2), args.output)
    return EXIT_OK


def cmd_optimize(args):
    p = _load(args)
    opt = optimize(p, temp_prefix=args.temp_prefix)
    _write(pretty_print(opt.program), args.output)
    if args.dump_rewrites:
        record = {"temps": opt.temps.to_json(), "rewrites": [r.to_json() for r in opt.rewrites]}
        print(json.dumps(record, indent=2), file=sys.stderr)
    return EXIT_OK


def _state_arg(text):
    if text is None:
        return {}
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as f:
            text = f.read()
    state = json.loads(text)
    if not isinstance(state, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in state.values()
    ):
        raise argparse.ArgumentTypeError("state must be a JSON object mapping names to integers")
    return state


def cmd_run(args):
    p = _load(args)
    try:
        state = _state_arg(args.state)
        schedule = parse_schedule(args.schedule or "")
    except (ValueError, argparse.ArgumentTypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        result = run(p, state, schedule, args.fuel)
    except RunError as err:
        _write(json.dumps({"error": err.to_json()}), args.output)
        return EXIT_RUNTIME
    except ValueError as err:
        _write(json.dumps({"error": {"kind": "BadSchedule", "message": str(err)}}), args.output)
        return EXIT_RUNTIME
    _write(json.dumps(result.to_json(), indent=2), args.output)
    return EXIT_OK


def cmd_verify(args):
    p = _load(args)
    try:
        report = verify(p, states=args.states, seed=args.seed, fuel=args.fuel, lo=args.min, hi=args.max)
    except ScheduleBoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BOUND
    if args.json:
        _write(json.dumps(report.to_json(), indent=2), args.output)
    else:
        _write(report.summary(), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="fwpre", description="Partial redundancy elimination for FWHILE")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", nargs="?", help="source file (.fw); stdin if omitted or '-'")
        sp.add_argument("-o", "--output", help="output file; stdout by default")
        sp.set_defaults(func=func)
        return sp

    sp = add("parse", cmd_parse, "parse and print in canonical form")
    sp.add_argument("--ast-json", action="store_true", help="dump the syntax tree as JSON")

    sp = add("analyze", cmd_analyze, "dump modified/C/mce/ant/cpav annotations as JSON")
    sp.add_argument("--point", type=int, help="restrict output to one node id")

    sp = add("optimize", cmd_optimize, "run partial redundancy elimination")
    sp.add_argument("--dump-rewrites", action="store_true", help="write the rewrite record as JSON to stderr")
    sp.add_argument("--temp-prefix", default="t", help="prefix for generated temps (default: t)")

    sp = add("run", cmd_run, "execute under a schedule")
    sp.add_argument("--state", help="initial state as JSON, or @file")
    sp.add_argument("--schedule", help="thread orders, e.g. '7:2,1' (1-based); identity by default")
    sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sp = add("verify", cmd_verify, "differentially test the optimization")
    sp.add_argument("--states", type=int, default=50, help="number of random initial states")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    sp.add_argument("--min", type=int, default=-16, help="smallest random value")
    sp.add_argument("--max", type=int, default=16, help="largest random value")
    sp.add_argument("--json", action="store_true", help="print the report as JSON")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
