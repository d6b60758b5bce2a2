"""Command-line front end.

Loads an N-Triples file, parses a query, and evaluates it; `--check`
classifies the pattern and `--explain` prints the plan tree, both usable
without data. Output ordering is imposed here, at the edge: the algebra
works in unordered sets, but fixed inputs and flags must produce
byte-identical output.

Exit codes: 0 success, 1 input or usage error, 2 pattern rejected by the
well-designedness check.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from .algebra import Mapping, Variable, vars_of
from .analysis import (
    NotWellDesignedError,
    find_violation,
    is_opt_normal_form,
    is_safe,
)
from .engines import engine_names, get_engine
from .errors import ParseError
from .evaluator import run_query
from .ntriples import parse_ntriples
from .parser import Query, parse_query
from .rdf import format_term
from .rewrite import PlanError, build_plan, format_plan


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdsparql",
        description="Evaluate SPARQL SELECT queries over an N-Triples file.",
    )
    parser.add_argument("--data", metavar="PATH", help="N-Triples data file")
    parser.add_argument("--query", metavar="PATH", required=True, help="query file")
    parser.add_argument(
        "--engine", default="reference", metavar="NAME",
        help=f"BGP engine ({', '.join(engine_names())}; default: reference)",
    )
    parser.add_argument(
        "--mode", default="strict", choices=("strict", "oracle-fallback"),
        help="reject patterns that are not well-designed, or fall back to "
             "the direct evaluator (default: strict)",
    )
    parser.add_argument(
        "--format", default="tsv", choices=("tsv", "json"), help="result format",
    )
    parser.add_argument(
        "--explain", action="store_true", help="print the plan tree",
    )
    parser.add_argument(
        "--check", action="store_true",
        help="print pattern classification and exit (0 if well-designed, 2 if not)",
    )
    parser.add_argument(
        "--time", action="store_true", help="report per-phase timings on stderr",
    )
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    if args.data is None and not (args.check or args.explain):
        parser.error("--data is required unless --check or --explain is given")

    try:
        get_engine(args.engine)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    t0 = time.perf_counter()
    try:
        with open(args.query, encoding="utf-8") as fh:
            query = parse_query(fh.read())
    except OSError as exc:
        print(f"error: cannot read query: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {args.query}: {exc}", file=sys.stderr)
        return 1
    parse_seconds = time.perf_counter() - t0

    if args.check:
        violation = find_violation(query.pattern)
        well_designed = violation is None
        print("union_free: true")
        print(f"safe: {_bool(is_safe(query.pattern))}")
        if well_designed:
            print("well_designed: true")
        else:
            print(f"well_designed: false ({violation.message()})")
        print(f"opt_normal_form: {_bool(is_opt_normal_form(query.pattern))}")
        if not well_designed:
            return 2

    if args.explain:
        try:
            sys.stdout.write(format_plan(build_plan(query.pattern)))
        except PlanError as exc:
            print(f"error: cannot build a plan: {exc}", file=sys.stderr)
            return 1
        except NotWellDesignedError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    if args.data is None:
        return 0

    t0 = time.perf_counter()
    try:
        with open(args.data, encoding="utf-8") as fh:
            graph = parse_ntriples(fh.read())
    except OSError as exc:
        print(f"error: cannot read data: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {args.data}: {exc}", file=sys.stderr)
        return 1
    load_seconds = time.perf_counter() - t0

    _warn_unused_projection(query)

    try:
        report = run_query(query, graph, engine=get_engine(args.engine), mode=args.mode)
    except NotWellDesignedError as exc:
        print(f"error: pattern is not well-designed: {exc}", file=sys.stderr)
        return 2
    except PlanError as exc:
        print(
            f"error: cannot build a plan: {exc} (try --mode oracle-fallback)",
            file=sys.stderr,
        )
        return 1

    columns = _columns(query)
    if args.format == "tsv":
        _print_tsv(columns, report.solutions)
    else:
        _print_json(columns, report.solutions)

    if args.time:
        phases = {"load": load_seconds, "parse": parse_seconds, **report.wall_times}
        for name, seconds in phases.items():
            print(f"{name}: {seconds * 1000.0:.3f} ms", file=sys.stderr)
    return 0


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _warn_unused_projection(query: Query) -> None:
    if query.projection is None:
        return
    pattern_vars = vars_of(query.pattern)
    for var in sorted(query.projection - pattern_vars, key=lambda v: v.name):
        print(
            f"warning: ?{var.name} is projected but never appears in the pattern",
            file=sys.stderr,
        )


def _columns(query: Query) -> list[Variable]:
    if query.projection is None:
        selected = vars_of(query.pattern)
    else:
        selected = query.projection
    return sorted(selected, key=lambda v: v.name)


def _rows(columns: list, solutions: frozenset) -> list[list[str]]:
    rows = [
        [format_term(term) if (term := m.get(var)) is not None else "" for var in columns]
        for m in solutions
    ]
    rows.sort()
    return rows


def _print_tsv(columns: list, solutions: frozenset[Mapping]) -> None:
    print("\t".join(f"?{v.name}" for v in columns))
    for row in _rows(columns, solutions):
        print("\t".join(row))


def _print_json(columns: list, solutions: frozenset[Mapping]) -> None:
    rows = [
        {f"?{var.name}": cell for var, cell in zip(columns, row) if cell != ""}
        for row in _rows(columns, solutions)
    ]
    doc = {"vars": [f"?{v.name}" for v in columns], "rows": rows}
    print(json.dumps(doc, indent=2, sort_keys=True))


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
