"""
Counting service used by the MCP server.

Each function takes the CLI text formats and returns a JSON-ready dict.
Errors are returned as {"error": ...} payloads instead of being raised.
"""

import logging
from typing import Any, Dict, Optional

from cli.formats import parse_graph, parse_patterns
from config.settings import load_settings
from engine.index import ISubIndex
from oracle.brute_force import hom_bf, isub_bf, sub_bf
from patterns.compiler import PlanCompiler
from structures.errors import ISubError

logger = logging.getLogger("isub.server")


def _error(exc: Exception) -> Dict[str, Any]:
    return {"error": str(exc), "type": type(exc).__name__}


def count_patterns(
    graph_text: str,
    patterns_text: str,
    mode: str = "dynamic",
    max_pattern_size: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Count every pattern in the graph.

    Args:
        graph_text: Graph in the `graph <k>` text format
        patterns_text: Patterns in the `pattern <name>` block format
        mode: 'dynamic' (build the index) or 'oracle' (brute force)
        max_pattern_size: Size guard (defaults to the configured one)

    Returns:
        {"counts": {name: {"isub": .., "sub": .., "hom": ..}}} plus index
        statistics in dynamic mode
    """
    if mode not in ("dynamic", "oracle"):
        return {"error": f"unknown mode {mode!r}; use 'dynamic' or 'oracle'"}
    settings = load_settings()
    try:
        graph = parse_graph(graph_text)
        patterns = parse_patterns(patterns_text, graph.k)
        if mode == "oracle":
            counts = {
                name: {"isub": isub_bf(p, graph), "sub": sub_bf(p, graph), "hom": hom_bf(p, graph)}
                for name, p in patterns
            }
            return {"mode": mode, "counts": counts}
        index = ISubIndex.build(
            graph, patterns,
            seed=settings.seed,
            max_size=max_pattern_size or settings.max_pattern_size,
            member_cap=settings.member_cap,
            min_cap=settings.min_cap,
        )
        stats = index.stats()
        return {
            "mode": mode,
            "counts": index.counts(),
            "h": stats["h"],
            "engines": stats["engines"],
        }
    except ISubError as exc:
        logger.warning("count_patterns failed: %s", exc)
        return _error(exc)


def compile_summary(patterns_text: str, k: int = 1, max_pattern_size: Optional[int] = None) -> Dict[str, Any]:
    """Plan summary per pattern: terms, augmented set sizes, clan counts."""
    settings = load_settings()
    try:
        patterns = parse_patterns(patterns_text, k)
        compiler = PlanCompiler(k, max_pattern_size or settings.max_pattern_size, settings.member_cap)
        return {name: compiler.summary(compiler.compile(p)) for name, p in patterns}
    except (ISubError, ValueError) as exc:
        logger.warning("compile_summary failed: %s", exc)
        return _error(exc)


def oracle_check(graph_text: str, patterns_text: str) -> Dict[str, Any]:
    """Compare the index against brute force on one graph."""
    dynamic = count_patterns(graph_text, patterns_text, "dynamic")
    if "error" in dynamic:
        return dynamic
    oracle = count_patterns(graph_text, patterns_text, "oracle")
    if "error" in oracle:
        return oracle
    mismatches = [
        {"pattern": name, "kind": kind, "dynamic": value, "oracle": oracle["counts"][name][kind]}
        for name, values in dynamic["counts"].items()
        for kind, value in values.items()
        if value != oracle["counts"][name][kind]
    ]
    return {"ok": not mismatches, "mismatches": mismatches, "counts": dynamic["counts"]}
