"""
Benchmark: random bounded-degeneracy update streams against the index and a
naive full recount.

Every vertex v picks up to `degeneracy` earlier vertices as its candidate
neighbors, so any subset of the candidate edges is a graph of degeneracy at
most `degeneracy`. The stream toggles random candidate edges.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from engine.index import ISubIndex
from oracle.brute_force import isub_bf
from patterns.pattern import Pattern
from structures.colored_graph import ColoredGraph

logger = logging.getLogger("isub.bench")

BENCH_PATTERNS: Dict[str, Pattern] = {
    "k2": Pattern(range(2), [(0, 1, 1)]),
    "p3": Pattern(range(3), [(0, 1, 1), (1, 2, 1)]),
    "tri": Pattern(range(3), [(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
}


@dataclass
class BenchStream:
    n: int
    initial: List[Tuple[int, int]]
    ops: List[Tuple[str, int, int]] = field(default_factory=list)


def generate_stream(n: int, degeneracy: int, ops: int, seed: int) -> BenchStream:
    """Deterministic for a fixed seed: half the candidate edges start present."""
    rng = np.random.default_rng(seed)
    candidates: List[Tuple[int, int]] = []
    for v in range(1, n):
        picks = rng.choice(v, size=min(degeneracy, v), replace=False)
        candidates.extend((int(u), v) for u in sorted(picks))
    present = rng.random(len(candidates)) < 0.5
    stream = BenchStream(n, [edge for edge, on in zip(candidates, present) if on])
    if not candidates:
        return stream
    for index in rng.integers(0, len(candidates), size=ops):
        u, v = candidates[int(index)]
        stream.ops.append(("-" if present[index] else "+", u, v))
        present[index] = not present[index]
    return stream


def _percentiles(samples: List[float]) -> Dict[str, float]:
    if not samples:
        return {"p50_us": float("nan"), "p90_us": float("nan"), "p99_us": float("nan"), "mean_us": float("nan")}
    values = np.asarray(samples) * 1e6
    p50, p90, p99 = np.percentile(values, [50, 90, 99])
    return {"p50_us": float(p50), "p90_us": float(p90), "p99_us": float(p99), "mean_us": float(values.mean())}


def run_bench(
    n: int,
    degeneracy: int,
    ops: int,
    pattern_name: str,
    seed: int,
    recount_samples: int = 3,
    min_cap: int = 4,
) -> Tuple[pd.DataFrame, Dict]:
    """
    Time every update (plus one count query) on the index, and the first
    `recount_samples` states by full recount.

    Returns:
        (timing table with one row per side, run summary)
    """
    pattern = BENCH_PATTERNS[pattern_name]
    stream = generate_stream(n, degeneracy, ops, seed)
    graph = ColoredGraph(1, range(n))
    for u, v in stream.initial:
        graph.add_edge(u, v, 1)

    started = time.perf_counter()
    index = ISubIndex.build(graph, [(pattern_name, pattern)], seed=seed, min_cap=min_cap)
    build_seconds = time.perf_counter() - started
    index.counters.reset()

    update_times: List[float] = []
    query_times: List[float] = []
    recount_times: List[float] = []
    inserts = 0
    for i, (kind, u, v) in enumerate(stream.ops):
        started = time.perf_counter()
        if kind == "+":
            index.add_edge(u, v, 1)
            inserts += 1
        else:
            index.remove_edge(u, v)
        update_times.append(time.perf_counter() - started)

        started = time.perf_counter()
        count = index.count_induced(pattern_name)
        query_times.append(time.perf_counter() - started)

        if i < recount_samples:
            started = time.perf_counter()
            expected = isub_bf(pattern, index.graph, check_scale=False)
            recount_times.append(time.perf_counter() - started)
            if expected != count:
                logger.error("bench mismatch at op %d: index %d, recount %d", i, count, expected)

    table = pd.DataFrame(
        [
            {"side": "update", **_percentiles(update_times)},
            {"side": "query", **_percentiles(query_times)},
            {"side": "recount", **_percentiles(recount_times)},
        ]
    ).set_index("side")
    stats = index.stats()
    summary = {
        "seed": seed,
        "n": n,
        "degeneracy": degeneracy,
        "pattern": pattern_name,
        "ops": len(stream.ops),
        "h": stats["h"],
        "engines": stats["engines"],
        "build_seconds": build_seconds,
        "inserts": inserts,
        "work_per_insert": index.counters.total() / inserts if inserts else 0.0,
        "work": stats["work"],
        "levels": stats["levels"],
        "final_count": index.count_induced(pattern_name),
    }
    logger.info("bench finished: n=%d ops=%d work/insert=%.1f", n, len(stream.ops), summary["work_per_insert"])
    return table, summary


def record_bench(table: pd.DataFrame, summary: Dict, database_url: str) -> Optional[int]:
    """Persist a bench run and its metrics; returns the run id."""
    from database.models import get_session_maker, init_db
    from database.tracking import track_bench_metric, track_bench_run

    engine = init_db(database_url)
    session = get_session_maker(engine)()
    try:
        run_id = track_bench_run(session, summary)
        if run_id is None:
            return None
        for side, row in table.iterrows():
            for metric, value in row.items():
                if not np.isnan(value):
                    track_bench_metric(session, run_id, f"{side}_{metric}", value, context=side)
        track_bench_metric(session, run_id, "work_per_insert", summary["work_per_insert"], context="engine")
        return run_id
    finally:
        session.close()
