"""Command-line interface: ``regionmoves <command> INPUT ...``.

INPUT is a PD file, ``-`` for standard input, or ``corpus:NAME`` for a bundled
diagram.  Exit status is 0 on success (including "no solution"), 1 on usage
or input errors and 2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

from . import corpus as corpus_mod
from .diagram import (
    Diagram,
    is_descending,
    parse_pd,
    reducible_crossings,
    serialize_pd,
    total_linking_number,
)
from .moves import (
    PATH_ODD_INEFFECTIVE,
    apply_rcc,
    apply_rfcc,
    ineffective_sets,
    rfcc_realizability,
    solve_rcc,
    solve_rfcc,
    untie_by_rcc,
    untie_by_rfcc,
    untie_knot,
)
from .oracle import OracleCapError, cross_check, oracle_cap
from .realization import realize


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(s: Iterable[int]) -> str:
    return "[" + ", ".join(str(i) for i in sorted(s)) + "]"


def _load(args: argparse.Namespace) -> Diagram:
    src = args.input
    if src == "-":
        text = sys.stdin.read()
    elif src.startswith("corpus:"):
        e = corpus_mod.entry(src.split(":", 1)[1])
        return parse_pd(e.pd, e.free_loops + args.free_loops)
    else:
        text = Path(src).read_text()
    return parse_pd(text, args.free_loops)


def _region_list(text: str, d: Diagram) -> list[int]:
    text = text.strip()
    if text == "all":
        return list(range(d.m))
    if not text:
        return []
    try:
        regions = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad region list {text!r}") from None
    for r in regions:
        if not 0 <= r < d.m:
            raise IndexError(f"region {r} out of range (diagram has {d.m} regions)")
    return regions


def _target(args: argparse.Namespace, d: Diagram) -> frozenset[int]:
    if args.crossing is not None:
        if not 0 <= args.crossing < d.n:
            raise IndexError(f"crossing {args.crossing} out of range")
        return frozenset({args.crossing})
    bits = args.target.strip()
    if len(bits) != d.n or set(bits) - {"0", "1"}:
        raise UsageError(f"--target needs a bitstring of length {d.n}")
    return frozenset(i for i, ch in enumerate(bits) if ch == "1")


def _link_summary(d: Diagram) -> dict:
    lk = total_linking_number(d)
    even, rcc_witness = untie_by_rcc(d)
    _, rfcc_witness = untie_by_rfcc(d)
    return {
        "diagram": serialize_pd(d),
        "n": d.n,
        "m": d.m,
        "components": d.num_components,
        "ineffective": [sorted(s) for s in ineffective_sets(d)],
        "total_linking_number": lk,
        "untiable": even,
        "rcc_witness": None if rcc_witness is None else sorted(rcc_witness),
        "rfcc_witness": None if rfcc_witness is None else sorted(rfcc_witness),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    d = _load(args)
    if d.num_components >= 2:
        summary = _link_summary(d)
        if args.json:
            print(json.dumps(summary))
            return 0
    elif args.json:
        print(rfcc_realizability(d).to_json())
        return 0

    print(f"diagram: {serialize_pd(d)}")
    print(f"crossings: {d.n}")
    print(f"regions: {d.m}")
    print(f"components: {d.num_components}")
    red = sorted(reducible_crossings(d))
    print("reducible crossings: " + (" ".join(map(str, red)) if red else "none"))
    print("ineffective sets:")
    for s in ineffective_sets(d):
        print(f"  {_fmt(s)} ({len(s)})")
    if d.num_components >= 2:
        lk = summary["total_linking_number"]
        if summary["untiable"]:
            print(f"total linking number {lk} (even): untiable by RCC/RFCC")
            print(f"rcc witness: {_fmt(summary['rcc_witness'])}")
            print(f"rfcc witness: {_fmt(summary['rfcc_witness'])}")
        else:
            print(f"total linking number {lk} (odd): not untiable by RCC/RFCC")
        return 0
    if d.n == 0:
        print("no crossings")
        return 0
    report = rfcc_realizability(d)
    if report.path == PATH_ODD_INEFFECTIVE:
        print(f"path: {report.path}; all crossings RFCC-realizable")
    else:
        line = f"path: {report.path}; star_count: {report.star_count}"
        bad = report.unrealizable
        if bad:
            line += "; unrealizable crossings: " + " ".join(map(str, bad))
        else:
            line += "; all crossings RFCC-realizable"
        print(line)
        print("star crossings: " + (" ".join(map(str, report.star_crossings)) or "none"))
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    d = _load(args)
    target = _target(args, d)
    solver = solve_rcc if args.mode == "rcc" else solve_rfcc
    witnesses = solver(d, target)
    if args.json:
        print(json.dumps([sorted(s) for s in witnesses]))
    elif not witnesses:
        print("no solution")
    else:
        for s in witnesses:
            print(_fmt(s))
    return 0


def cmd_apply(args: argparse.Namespace) -> int:
    d = _load(args)
    regions = _region_list(args.regions, d)
    out = apply_rcc(d, regions) if args.mode == "rcc" else apply_rfcc(d, regions)
    print(serialize_pd(out))
    return 0


def cmd_untie(args: argparse.Namespace) -> int:
    d = _load(args)
    if d.is_knot:
        witness = untie_knot(d, args.mode)
        out = apply_rcc(d, witness) if args.mode == "rcc" else apply_rfcc(d, witness)
        print(f"witness: {_fmt(witness)}")
        print(f"result: {serialize_pd(out)}")
        if is_descending(out):
            print("result is descending")
        else:
            print("result is the mirror of a descending diagram")
        return 0
    criterion, witness = (untie_by_rcc if args.mode == "rcc" else untie_by_rfcc)(d)
    lk = total_linking_number(d)
    print(f"total linking number: {lk} ({'even' if criterion else 'odd'})")
    if witness is None:
        print("no untying witness")
    else:
        out = apply_rcc(d, witness) if args.mode == "rcc" else apply_rfcc(d, witness)
        print(f"witness: {_fmt(witness)}")
        print(f"result: {serialize_pd(out)}")
    if criterion != (witness is not None):
        raise AssertionError("linking-number criterion disagrees with witness search")
    return 0


def cmd_realize(args: argparse.Namespace) -> int:
    d = _load(args)
    trace = realize(d, args.crossing)
    if args.trace:
        print(trace.to_json())
    else:
        print(_fmt(trace.result))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    cap = oracle_cap()
    jobs: list[tuple[str, Diagram]] = []
    if args.corpus:
        jobs += [(e.name, e.diagram) for e in corpus_mod.load_corpus()]
    if args.input is not None:
        jobs.append((args.input, _load(args)))
    if not jobs:
        raise UsageError("give an INPUT or --corpus")
    failures = 0
    for name, d in jobs:
        try:
            problems = cross_check(d, cap)
        except OracleCapError as exc:
            print(f"{name}: skipped ({exc})")
            continue
        if problems:
            failures += 1
            print(f"{name}: MISMATCH")
            for p in problems:
                print(f"  {p}")
        else:
            print(f"{name}: ok")
    return 2 if failures else 0


def cmd_corpus(args: argparse.Namespace) -> int:
    bad = 0
    for e in corpus_mod.load_corpus():
        problems = corpus_mod.validate(e)
        bad += bool(problems)
        status = "ok" if not problems else "MISMATCH"
        print(f"{e.name}: {status} - {e.description}")
        for p in problems:
            print(f"  {p}")
    return 2 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regionmoves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help: str, input_required: bool = True,
            aliases: Sequence[str] = ()) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, aliases=list(aliases))
        if input_required:
            p.add_argument("input", help="PD file, '-' for stdin, or corpus:NAME")
        else:
            p.add_argument("input", nargs="?", help="PD file, '-' for stdin, or corpus:NAME")
        p.add_argument("--free-loops", type=int, default=0,
                       help="number of crossingless components (default 0)")
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "regions, ineffective sets, RFCC realizability, untying")
    p.add_argument("--json", action="store_true")

    p = add("solve", cmd_solve, "all region sets realizing a crossing change")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--crossing", type=int)
    g.add_argument("--target", help="bitstring, character i for crossing i")
    p.add_argument("--mode", choices=("rcc", "rfcc"), default="rcc")
    p.add_argument("--json", action="store_true")

    p = add("apply", cmd_apply, "apply region moves and print the resulting PD code")
    p.add_argument("--regions", required=True, help="comma-separated indices, '' or 'all'")
    p.add_argument("--mode", choices=("rcc", "rfcc"), default="rcc")

    p = add("untie", cmd_untie, "find region moves reaching a descending diagram")
    p.add_argument("--mode", choices=("rcc", "rfcc"), default="rcc")

    p = add("realize", cmd_realize, "constructive single-crossing realization",
            aliases=["shimizu"])
    p.add_argument("--crossing", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="print the construction as JSON")

    p = add("oracle", cmd_oracle, "cross-check solvers against brute force", input_required=False)
    p.add_argument("--corpus", action="store_true", help="check every bundled diagram")

    p = sub.add_parser("corpus", help="validate bundled diagrams against their metadata")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, IndexError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
