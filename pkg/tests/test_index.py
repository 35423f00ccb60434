"""
Test the counting index end to end against the brute-force oracle
"""
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engine.ahom import AHomState
from engine.index import ISubIndex
from oracle.brute_force import hom_bf, isub_bf, sub_bf
from patterns.compiler import CountKind
from patterns.pattern import Pattern
from structures.augmentation import ChangeKind, DirectedChange
from structures.colored_graph import ColoredGraph, edge_key
from structures.errors import CapacityExceededError, UnknownPatternError, VertexNotIsolatedError
from tests.test_augmentation import check_cascade
from tests.conftest import PATTERNS, make_graph

SMALL = ["single", "pair", "k2", "p3", "tri"]
ORACLES = {CountKind.INDUCED: isub_bf, CountKind.SUB: sub_bf, CountKind.HOM: hom_bf}


def assert_matches_oracle(index, names=None):
    for name in names or index.names():
        pattern = PATTERNS[name]
        for kind, oracle in ORACLES.items():
            assert index.count(name, kind) == oracle(pattern, index.graph), (name, kind)


def random_op(rng, index, k, max_vertices=9):
    """Apply one random valid host operation."""
    graph = index.graph
    vertices = sorted(graph.vertices())
    roll = rng.random()
    if roll < 0.08 and len(vertices) < max_vertices:
        index.add_vertex()
        return
    isolated = [v for v in vertices if graph.degree(v) == 0]
    if roll < 0.12 and isolated and len(vertices) > 2:
        index.remove_isolated_vertex(rng.choice(isolated))
        return
    u, v = rng.sample(vertices, 2)
    if graph.has_edge(u, v):
        if k > 1 and rng.random() < 0.3:
            index.recolor_edge(u, v, rng.choice([c for c in range(1, k + 1) if c != graph.color(u, v)]))
        else:
            index.remove_edge(u, v)
    else:
        index.add_edge(u, v, rng.randint(1, k))


class TestExamples:

    def test_triangle(self, triangle_graph, patterns):
        index = ISubIndex.build(triangle_graph, [("tri", patterns["tri"]), ("p3", patterns["p3"])])
        assert index.count_induced("tri") == 6
        assert index.count_hom("p3") == 12
        assert index.count_sub("p3") == 6
        assert index.count_induced("p3") == 0

    def test_path(self, path_graph, patterns):
        index = ISubIndex.build(path_graph, [("p3", patterns["p3"])])
        assert index.count_induced("p3") == 2

    def test_empty_graph(self, patterns):
        index = ISubIndex.build(ColoredGraph(1, range(4)), [(name, patterns[name]) for name in SMALL])
        assert index.count_induced("single") == 4
        assert index.count_induced("pair") == 12
        for name in ("k2", "p3", "tri"):
            assert index.counts()[name] == {"isub": 0, "sub": 0, "hom": 0}

    def test_edges_counted_twice(self, patterns):
        g = make_graph(1, 6, [(0, 1, 1), (2, 3, 1), (3, 4, 1)])
        index = ISubIndex.build(g, [("k2", patterns["k2"])])
        assert index.counts()["k2"] == {"isub": 6, "sub": 6, "hom": 6}

    def test_build_copies_graph(self, triangle_graph, patterns):
        index = ISubIndex.build(triangle_graph, [("tri", patterns["tri"])])
        index.remove_edge(0, 1)
        assert triangle_graph.num_edges() == 3


class TestUpdates:

    def test_triangle_appears(self, patterns):
        index = ISubIndex.build(ColoredGraph(1, range(3)), [("tri", patterns["tri"]), ("p3", patterns["p3"])])
        seen = []
        for u, v in [(0, 1), (1, 2), (0, 2)]:
            index.add_edge(u, v, 1)
            seen.append(index.count_induced("tri"))
        assert seen == [0, 0, 6]
        index.remove_edge(0, 1)
        assert index.count_induced("tri") == 0
        assert index.count_induced("p3") == 2

    def test_recolor_switches_colored_pattern(self):
        blue_edge = Pattern([0, 1], [(0, 1, 2)])
        index = ISubIndex.build(make_graph(2, 3, [(0, 1, 1)]), [("blue", blue_edge)])
        assert index.count_induced("blue") == 0
        index.recolor_edge(0, 1, 2)
        assert index.count_induced("blue") == 2
        index.recolor_edge(0, 1, 1)
        assert index.count_induced("blue") == 0

    def test_vertex_operations(self, triangle_graph, patterns):
        index = ISubIndex.build(triangle_graph, [("single", patterns["single"]), ("tri", patterns["tri"])])
        before = index.counts()
        v = index.add_vertex()
        assert index.count_induced("single") == before["single"]["isub"] + 1
        assert index.count_induced("tri") == before["tri"]["isub"]
        index.remove_isolated_vertex(v)
        assert index.counts() == before

    def test_remove_non_isolated_vertex(self, triangle_graph, patterns):
        index = ISubIndex.build(triangle_graph, [("single", patterns["single"])])
        with pytest.raises(VertexNotIsolatedError):
            index.remove_isolated_vertex(0)

    def test_unknown_pattern(self, triangle_graph, patterns):
        index = ISubIndex.build(triangle_graph, [("tri", patterns["tri"])])
        with pytest.raises(UnknownPatternError):
            index.count_induced("square")

    def test_duplicate_name(self, triangle_graph, patterns):
        with pytest.raises(ValueError):
            ISubIndex.build(triangle_graph, [("tri", patterns["tri"]), ("tri", patterns["p3"])])

    def test_color_range_mismatch(self, triangle_graph, patterns):
        with pytest.raises(ValueError):
            ISubIndex.build(triangle_graph, [("tri", patterns["tri"])], k=2)

    def test_strict_class_rolls_back_host_edge(self, patterns):
        index = ISubIndex.build(ColoredGraph(1, range(5)), [("k2", patterns["k2"])], strict=True, min_cap=1)
        raised = False
        for u, v in itertools.combinations(range(5), 2):
            try:
                index.add_edge(u, v, 1)
            except CapacityExceededError:
                raised = True
                assert not index.graph.has_edge(u, v)
                break
        assert raised
        assert_matches_oracle(index)

    def test_register_on_live_index(self, path_graph, patterns):
        index = ISubIndex.build(path_graph, [("k2", patterns["k2"])])
        index.add_edge(0, 2, 1)
        index.register("tri", patterns["tri"])
        index.register("p4", patterns["p4"])
        assert index.augmentation.h == 4
        index.remove_edge(1, 2)
        assert_matches_oracle(index)

    def test_stats(self, triangle_graph, patterns):
        index = ISubIndex.build(triangle_graph, [("p3", patterns["p3"])])
        stats = index.stats()
        assert stats["h"] == 1
        assert stats["engines"] == len(index.engines)
        assert stats["union_edges"] == 3
        assert all(level["max_in_degree"] <= level["cap"] for level in stats["levels"])
        assert set(stats["work"]) >= {"flips", "fork_updates", "enumerations"}


class TestOracleEquivalence:

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 100_000), k=st.integers(1, 2), n=st.integers(3, 7))
    def test_random_scripts(self, seed, k, n):
        rng = random.Random(seed)
        patterns = [(name, PATTERNS[name]) for name in SMALL]
        index = ISubIndex.build(ColoredGraph(k, range(n)), patterns, seed=seed, min_cap=rng.randint(1, 4))
        for _ in range(30):
            random_op(rng, index, k)
            assert_matches_oracle(index)
            for engine in index.engines.values():
                assert engine.view_edges() == index.augmentation.edges()

    def test_four_vertex_patterns(self):
        names = ["p4", "c4", "paw", "diamond", "tri", "k2"]
        rng = random.Random(2024)
        index = ISubIndex.build(ColoredGraph(1, range(7)), [(name, PATTERNS[name]) for name in names])
        for _ in range(40):
            random_op(rng, index, 1)
            for name in names:
                assert index.count_induced(name) == isub_bf(PATTERNS[name], index.graph), name

    @settings(max_examples=8, deadline=None)
    @given(seed=st.integers(0, 100_000), n=st.integers(6, 12))
    def test_long_mixed_scripts_keep_cascade_invariants(self, seed, n):
        names = ["p4", "c4", "paw", "diamond", "tri", "p3", "k2", "single"]
        rng = random.Random(seed)
        index = ISubIndex.build(
            ColoredGraph(2, range(n)), [(name, PATTERNS[name]) for name in names],
            seed=seed, min_cap=rng.randint(1, 3),
        )
        for _ in range(60):
            random_op(rng, index, 2, max_vertices=12)
            assert_matches_oracle(index)
            check_cascade(index.augmentation)
            for engine in index.engines.values():
                assert engine.view_edges() == index.augmentation.edges()

    def test_counts_independent_of_seed(self):
        rng = random.Random(7)
        script = [edge_key(*rng.sample(range(8), 2)) for _ in range(120)]
        patterns = [(name, PATTERNS[name]) for name in SMALL]
        first = ISubIndex.build(ColoredGraph(1, range(8)), patterns, seed=1)
        second = ISubIndex.build(ColoredGraph(1, range(8)), patterns, seed=99, min_cap=1)
        for u, v in script:
            for index in (first, second):
                if index.graph.has_edge(u, v):
                    index.remove_edge(u, v)
                else:
                    index.add_edge(u, v, 1)
            assert first.counts() == second.counts()


class TestEngineState:

    @settings(max_examples=10, deadline=None)
    @given(seed=st.integers(0, 100_000))
    def test_state_is_function_of_union(self, seed):
        rng = random.Random(seed)
        index = ISubIndex.build(
            ColoredGraph(2, range(6)), [(name, PATTERNS[name]) for name in ("p3", "tri")], seed=seed
        )
        for _ in range(25):
            random_op(rng, index, 2)
        union = [
            DirectedChange(ChangeKind.INSERT, t, h, c) for (t, h), c in sorted(index.augmentation.edges().items())
        ]
        for engine in index.engines.values():
            fresh = AHomState(engine.vineyard)
            fresh.apply_batch(union)
            assert fresh.snapshot() == engine.snapshot()

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 100_000))
    def test_op_then_inverse(self, seed):
        rng = random.Random(seed)
        index = ISubIndex.build(
            ColoredGraph(2, range(6)), [(name, PATTERNS[name]) for name in ("k2", "p3", "tri")], seed=seed
        )
        for _ in range(10):
            random_op(rng, index, 2)
        for _ in range(10):
            counts = index.counts()
            union = index.augmentation.edges()
            snapshots = {key: engine.snapshot() for key, engine in index.engines.items()}
            u, v = rng.sample(sorted(index.graph.vertices()), 2)
            if index.graph.has_edge(u, v):
                c = index.graph.color(u, v)
                index.remove_edge(u, v)
                index.add_edge(u, v, c)
            else:
                index.add_edge(u, v, rng.randint(1, 2))
                index.remove_edge(u, v)
            assert index.counts() == counts
            if index.augmentation.edges() == union:
                assert {key: engine.snapshot() for key, engine in index.engines.items()} == snapshots
