"""
Command-line frontend.

    python -m cli run --graph G --patterns P --ops O [--mode dynamic|oracle|both]
    python -m cli compile --patterns P [--colors K]
    python -m cli bench [--n N] [--degeneracy D] [--ops M] [--pattern tri|p3|k2]

Exit codes: 0 ok, 2 unreadable input, 3 parse error, 4 guard violation,
5 oracle mismatch, 6 strict-class violation, 7 invalid host operation,
8 unknown pattern name.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, TextIO

from config.settings import load_settings
from engine.index import ISubIndex
from oracle.brute_force import hom_bf, isub_bf, sub_bf
from patterns.compiler import CountKind, PlanCompiler
from structures.colored_graph import ColoredGraph
from structures.errors import (
    CapacityExceededError,
    GraphError,
    OracleScaleError,
    PatternError,
    ScriptParseError,
    UnknownPatternError,
)

from .bench import BENCH_PATTERNS, record_bench, run_bench
from .formats import OpScript, parse_graph, parse_patterns

logger = logging.getLogger("isub.cli")

EXIT_OK = 0
EXIT_IO = 2
EXIT_PARSE = 3
EXIT_GUARD = 4
EXIT_MISMATCH = 5
EXIT_STRICT = 6
EXIT_HOST_OP = 7
EXIT_UNKNOWN_PATTERN = 8

ORACLES = {CountKind.INDUCED: isub_bf, CountKind.SUB: sub_bf, CountKind.HOM: hom_bf}


class OracleMismatch(Exception):
    pass


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _apply_host_op(graph: ColoredGraph, kind: str, args: tuple) -> None:
    if kind == "+":
        graph.add_edge(*args)
    elif kind == "-":
        graph.remove_edge(*args)
    elif kind == "c":
        graph.recolor_edge(*args)
    elif kind == "+v":
        graph.add_vertex(args[0])
    else:
        graph.remove_vertex(args[0])


def _apply_index_op(index: ISubIndex, kind: str, args: tuple) -> None:
    if kind == "+":
        index.add_edge(*args)
    elif kind == "-":
        index.remove_edge(*args)
    elif kind == "c":
        index.recolor_edge(*args)
    elif kind == "+v":
        index.add_vertex(args[0])
    else:
        index.remove_isolated_vertex(args[0])


# ==================== Commands ====================

def cmd_run(args: argparse.Namespace, out: TextIO) -> int:
    graph = parse_graph(_read(args.graph))
    patterns = parse_patterns(_read(args.patterns), graph.k)
    script = OpScript.parse(_read(args.ops))
    by_name = dict(patterns)

    index: Optional[ISubIndex] = None
    if args.mode in ("dynamic", "both"):
        index = ISubIndex.build(
            graph, patterns,
            strict=args.strict_class, seed=args.seed,
            max_size=args.max_pattern_size, member_cap=args.member_cap, min_cap=args.min_cap,
        )
    reference = graph.copy() if args.mode in ("oracle", "both") else None

    for op_index, op in enumerate(script):
        if op.kind != "q":
            try:
                if index is not None:
                    _apply_index_op(index, op.kind, op.args)
                if reference is not None:
                    _apply_host_op(reference, op.kind, op.args)
            except GraphError as exc:
                raise GraphError(f"line {op.line}: {exc}") from exc
            continue

        name, kind = op.args
        if name not in by_name:
            raise UnknownPatternError(f"line {op.line}: unknown pattern {name!r}")
        dynamic = index.count(name, kind) if index is not None else None
        expected = ORACLES[kind](by_name[name], reference) if reference is not None else None
        if dynamic is not None and expected is not None and dynamic != expected:
            raise OracleMismatch(
                f"op {op_index} (line {op.line}): {kind.value}({name}) dynamic={dynamic} oracle={expected}"
            )
        value = dynamic if dynamic is not None else expected
        out.write(f"{op_index}\t{name}\t{value}\n")

    if args.stats and index is not None:
        _print_stats(index, sys.stderr)
    return EXIT_OK


def _print_stats(index: ISubIndex, stream: TextIO) -> None:
    stats = index.stats()
    stream.write(f"# h={stats['h']} engines={stats['engines']} s_entries={stats['s_entries']}\n")
    stream.write("# level\tcap\tedges\tmax_in_degree\tflips\n")
    for level in stats["levels"]:
        stream.write(
            f"# {level['level']}\t{level['cap']}\t{level['edges']}\t{level['max_in_degree']}\t{level['flips']}\n"
        )
    stream.write(f"# work {json.dumps(stats['work'], sort_keys=True)}\n")


def cmd_compile(args: argparse.Namespace, out: TextIO) -> int:
    patterns = parse_patterns(_read(args.patterns), args.colors)
    compiler = PlanCompiler(args.colors, args.max_pattern_size, args.member_cap)
    summaries: Dict[str, Dict] = {}
    for name, pattern in patterns:
        summaries[name] = compiler.summary(compiler.compile(pattern))
    out.write(json.dumps(summaries, indent=2) + "\n")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, out: TextIO) -> int:
    table, summary = run_bench(
        args.n, args.degeneracy, args.ops, args.pattern, args.seed,
        recount_samples=args.recount_samples, min_cap=args.min_cap,
    )
    out.write(table.to_string(float_format=lambda value: f"{value:.1f}") + "\n")
    out.write(
        f"h={summary['h']} engines={summary['engines']} build={summary['build_seconds']:.3f}s "
        f"work/insert={summary['work_per_insert']:.1f}\n"
    )
    for level in summary["levels"]:
        out.write(f"level {level['level']}: cap={level['cap']} max_in_degree={level['max_in_degree']}\n")
    if args.record:
        run_id = record_bench(table, summary, args.database_url)
        out.write(f"recorded run {run_id}\n" if run_id is not None else "recording failed\n")
    return EXIT_OK


# ==================== Entry point ====================

def build_parser() -> argparse.ArgumentParser:
    settings = load_settings()
    parser = argparse.ArgumentParser(prog="isub", description="exact dynamic pattern counts in sparse colored graphs")
    parser.add_argument("--log-level", default=settings.log_level, help="logging level")
    commands = parser.add_subparsers(dest="command", required=True)

    def guards(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--max-pattern-size", type=int, default=settings.max_pattern_size)
        sub.add_argument("--member-cap", type=int, default=settings.member_cap)
        sub.add_argument("--min-cap", type=int, default=settings.min_cap)

    run = commands.add_parser("run", help="replay an ops file and print query results")
    run.add_argument("--graph", required=True)
    run.add_argument("--patterns", required=True)
    run.add_argument("--ops", required=True)
    run.add_argument("--mode", choices=["dynamic", "oracle", "both"], default="dynamic")
    run.add_argument("--seed", type=int, default=settings.seed)
    run.add_argument("--strict-class", action="store_true", help="fail instead of doubling orientation caps")
    run.add_argument("--stats", action="store_true", help="print cascade statistics to stderr")
    guards(run)
    run.set_defaults(handler=cmd_run)

    comp = commands.add_parser("compile", help="summarize the compiled plans of a patterns file")
    comp.add_argument("--patterns", required=True)
    comp.add_argument("--colors", type=int, default=1)
    guards(comp)
    comp.set_defaults(handler=cmd_compile)

    bench = commands.add_parser("bench", help="time random update streams")
    bench.add_argument("--n", type=int, default=1000)
    bench.add_argument("--degeneracy", type=int, default=3)
    bench.add_argument("--ops", type=int, default=1000)
    bench.add_argument("--pattern", choices=sorted(BENCH_PATTERNS), default="tri")
    bench.add_argument("--seed", type=int, default=settings.seed)
    bench.add_argument("--recount-samples", type=int, default=3)
    bench.add_argument("--record", action="store_true", help="store the run in DATABASE_URL")
    bench.add_argument("--database-url", default=settings.database_url)
    guards(bench)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None, out: TextIO = sys.stdout) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING))

    try:
        return args.handler(args, out)
    except OSError as exc:
        logger.error("cannot read input: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ScriptParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PatternError, OracleScaleError) as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OracleMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CapacityExceededError as exc:
        print(f"strict class violation: {exc}", file=sys.stderr)
        return EXIT_STRICT
    except GraphError as exc:
        print(f"invalid operation: {exc}", file=sys.stderr)
        return EXIT_HOST_OP
    except UnknownPatternError as exc:
        print(f"unknown pattern: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_PATTERN
