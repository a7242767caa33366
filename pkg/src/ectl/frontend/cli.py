"""Command-line entry point ``ectl``.

Exit codes: 0 when the formula holds at every queried state, 1 when it fails
somewhere, 2 for undecidable combinations or an exceeded cap, 3 for parse
and validation errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .. import automata
from ..checker import DEFAULT_CAP, check
from ..errors import CapExceeded, UndecidableError, ValidationError
from ..lts import natural_key
from .env import Environment
from .formats import parse_aut, parse_lts, serialize_aut
from .formula import parse_formula
from .report import build_report, render_json, render_text

EXIT_HOLDS, EXIT_FAILS, EXIT_UNDECIDABLE, EXIT_INVALID = 0, 1, 2, 3


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ValidationError(f"cannot read {path}: {err.strerror}") from None


def _load_aut(path):
    try:
        return parse_aut(_read(path))
    except ValidationError as err:
        raise ValidationError(f"{path}: {err}") from None


def _cmd_check(args, out):
    try:
        lts = parse_lts(_read(args.system))
    except ValidationError as err:
        raise ValidationError(f"{args.system}: {err}") from None
    env = Environment(lts.actions, [_load_aut(p) for p in args.aut], cap=args.cap)
    text = _read(args.formula) if args.formula else args.expr
    formula = parse_formula(text, env)
    states = args.at or list(lts.designated) or lts.sorted_states()
    for s in states:
        if s not in lts.states:
            raise ValidationError(f"unknown state {s!r}")
    dumps = [] if args.dump_ca else None
    result = check(lts, formula, env, cap=args.cap,
                   witness_states=states if args.witness else (), dump_ca=dumps)
    oracle = None
    if args.oracle is not None:
        from ..oracle import bounded_path_check
        verdict = bounded_path_check(lts, formula, env, args.oracle)
        oracle = {
            "depth": args.oracle,
            "disagreements": sorted((s for s, v in verdict.known().items()
                                     if v != result.holds(s)), key=natural_key),
            "unknown": sorted((s for s, v in verdict.values.items() if v is None), key=natural_key),
        }
    report = build_report(result, states, table=args.table, oracle=oracle)
    if dumps is not None:
        chunks = [f"# {node}\n{ca.dump()}" for node, ca in dumps]
        Path(args.dump_ca).write_text("\n".join(chunks))
    out.write((render_json(report) if args.json else render_text(report)) + "\n")
    if oracle and oracle["disagreements"]:
        print(f"warning: bounded oracle disagrees at {', '.join(oracle['disagreements'])}",
              file=sys.stderr)
    return EXIT_HOLDS if all(e["verdict"] for e in report["states"]) else EXIT_FAILS


def _cmd_aut(args, out):
    aut = _load_aut(args.file)
    if args.op == "accepts":
        word = [x for w in args.word for x in w.split()]
        accepted = automata.accepts(aut, word)
        out.write(("accepted" if accepted else "rejected") + "\n")
        return EXIT_HOLDS if accepted else EXIT_FAILS
    if args.op == "determinize":
        aut = automata.determinize(aut, cap=args.cap)
    elif args.op == "complete":
        aut = automata.complete(aut)
    else:
        if aut.kind == "pda":
            raise ValidationError(f"cannot complement nondeterministic pushdown automaton {aut.name}")
        aut = automata.complement(automata.complete(automata.determinize(aut, cap=args.cap)))
    out.write(serialize_aut(aut))
    return EXIT_HOLDS


def _pair(text):
    parts = text.split(",")
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected a tile pair like a,b; got {text!r}")
    return tuple(parts)


def _cmd_gen(args, out):
    from ..oracle.corpus import emit_fairness, emit_tiling
    if args.family == "fairness":
        paths = emit_fairness(args.n, args.k, args.out)
    else:
        paths = emit_tiling(args.n, args.tiles, args.h, args.v, args.out)
    for path in paths:
        out.write(f"{path}\n")
    return EXIT_HOLDS


def build_parser():
    parser = argparse.ArgumentParser(prog="ectl", description="Model checking for CTL with "
                                     "automaton-annotated until and release.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check a formula on a transition system")
    c.add_argument("--system", required=True, help=".lts file")
    source = c.add_mutually_exclusive_group(required=True)
    source.add_argument("--formula", help=".ectl file")
    source.add_argument("--expr", help="formula text")
    c.add_argument("--aut", action="append", default=[], help=".aut file (repeatable)")
    c.add_argument("--at", action="append", default=[], help="state to report (repeatable)")
    c.add_argument("--witness", action="store_true", help="print until witnesses")
    c.add_argument("--json", action="store_true", help="machine-readable report")
    c.add_argument("--table", action="store_true", help="include every subformula's state set")
    c.add_argument("--oracle", type=int, metavar="DEPTH",
                   help="cross-check with depth-bounded path enumeration")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP, help="determinization state cap")
    c.add_argument("--dump-ca", metavar="FILE", help="write saturated configuration automata")
    c.set_defaults(run=_cmd_check)

    a = sub.add_parser("aut", help="automaton constructions")
    a.add_argument("op", choices=["determinize", "complete", "complement", "accepts"])
    a.add_argument("file")
    a.add_argument("word", nargs="*", help="letters of the word (accepts only)")
    a.add_argument("--cap", type=int, default=DEFAULT_CAP)
    a.set_defaults(run=_cmd_aut)

    g = sub.add_parser("gen", help="write generated instance families")
    gsub = g.add_subparsers(dest="family", required=True)
    f = gsub.add_parser("fairness")
    f.add_argument("n", type=int)
    f.add_argument("k", type=int)
    t = gsub.add_parser("tiling")
    t.add_argument("n", type=int)
    t.add_argument("--tiles", nargs="+", required=True)
    t.add_argument("--h", nargs="*", type=_pair, default=[], help="horizontal pairs a,b")
    t.add_argument("--v", nargs="*", type=_pair, default=[], help="vertical pairs a,b")
    for p in (f, t):
        p.add_argument("--out", default="corpus", help="output directory")
    g.set_defaults(run=_cmd_gen)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_HOLDS
    try:
        return args.run(args, out)
    except (UndecidableError, CapExceeded) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
