"""
Test the dynamic homomorphism engine against brute-force directed counts
"""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engine.ahom import AHomState
from oracle.brute_force import dihom_bf
from patterns.compiler import PlanCompiler
from patterns.pattern import DirectedPattern
from structures.augmentation import ChangeKind, DirectedChange
from structures.errors import EdgeNotInViewError, EngineError
from tests.conftest import PATTERNS


def _engine(pattern, k=1):
    compiler = PlanCompiler(k)
    return AHomState(compiler.vineyards[compiler.prepare_vineyard(pattern)])


def _member_vineyards(name, k):
    compiler = PlanCompiler(k)
    ref = compiler.component_ref(PATTERNS[name])
    return [compiler.vineyards[key] for key, _ in ref.members]


def _random_digraph(rng, n, m, colors):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    edges = {}
    for u, v in pairs[:m]:
        t, h = (u, v) if rng.random() < 0.5 else (v, u)
        edges[(t, h)] = rng.choice(colors)
    return edges


EDGE = DirectedPattern([0, 1], [(0, 1, 1)])
OUT_STAR = DirectedPattern([0, 1, 2], [(0, 1, 1), (0, 2, 1)])


class TestExamples:

    def test_single_edge(self):
        engine = _engine(EDGE)
        assert engine.total() == 0
        engine.apply_insert(10, 11, 1)
        assert engine.total() == 1
        assert engine.root_count(10) == 1
        assert engine.root_count(11) == 0

    def test_out_star_counts(self):
        engine = _engine(OUT_STAR)
        engine.apply_insert(10, 11, 1)
        assert engine.total() == 1
        engine.apply_insert(10, 12, 1)
        assert engine.total() == 4
        assert engine.root_count(10) == 4

    def test_clan_table(self):
        engine = _engine(OUT_STAR)
        engine.apply_insert(10, 11, 1)
        engine.apply_insert(10, 12, 1)
        assert engine.s_value(0, (10,)) == 2
        engine.apply_delete(10, 12, 1)
        assert engine.s_value(0, (10,)) == 1
        assert engine.total() == 1

    def test_edge_count(self):
        engine = _engine(EDGE)
        for i in range(5):
            engine.apply_insert(i, i + 1, 1)
        engine.apply_insert(20, 21, 2)
        assert engine.total() == 5

    def test_insert_delete_restores_snapshot(self):
        engine = _engine(OUT_STAR)
        engine.apply_insert(10, 11, 1)
        engine.apply_insert(12, 10, 1)
        before = engine.snapshot()
        engine.apply_insert(10, 13, 1)
        engine.apply_delete(10, 13, 1)
        assert engine.snapshot() == before
        assert all(value != 0 for value in engine.snapshot()[0].values())

    def test_delete_unknown(self):
        engine = _engine(EDGE)
        with pytest.raises(EdgeNotInViewError):
            engine.apply_delete(0, 1, 1)
        engine.apply_insert(0, 1, 1)
        with pytest.raises(EdgeNotInViewError):
            engine.apply_delete(0, 1, 2)

    def test_insert_existing_pair(self):
        engine = _engine(EDGE)
        engine.apply_insert(0, 1, 1)
        with pytest.raises(EngineError):
            engine.apply_insert(1, 0, 1)

    def test_batch(self):
        engine = _engine(EDGE)
        engine.apply_batch([
            DirectedChange(ChangeKind.INSERT, 0, 1, 1),
            DirectedChange(ChangeKind.INSERT, 1, 2, 1),
            DirectedChange(ChangeKind.DELETE, 0, 1, 1),
        ])
        assert engine.total() == 1
        assert engine.view_edges() == {(1, 2): 1}

    def test_maintained_clans_include_full(self):
        engine = _engine(OUT_STAR)
        assert engine.maintained_clans[-1] == 2


class TestAgainstBruteForce:

    @settings(max_examples=15, deadline=None)
    @given(
        name=st.sampled_from(["k2", "p3", "tri"]),
        seed=st.integers(0, 10_000),
        n=st.integers(2, 7),
        m=st.integers(1, 14),
    )
    def test_random_streams(self, name, seed, n, m):
        rng = random.Random(seed)
        target = _random_digraph(rng, n, min(m, n * (n - 1) // 2), [0, 1])
        for vineyard in _member_vineyards(name, 1):
            engine = AHomState(vineyard)
            view = {}
            order = list(target.items())
            rng.shuffle(order)
            for (t, h), c in order:
                engine.apply_insert(t, h, c)
                view[(t, h)] = c
                assert engine.total() == dihom_bf(vineyard.pattern, view, host_vertices=range(n))
            root = vineyard.root
            for v in range(n):
                assert engine.root_count(v) == dihom_bf(
                    vineyard.pattern, view, fixed={root: v}, host_vertices=range(n)
                )
            for (t, h), c in order[: len(order) // 2]:
                engine.apply_delete(t, h, c)
                del view[(t, h)]
                assert engine.total() == dihom_bf(vineyard.pattern, view, host_vertices=range(n))

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_state_depends_only_on_view(self, seed):
        rng = random.Random(seed)
        target = _random_digraph(rng, 6, 9, [0, 1])
        for vineyard in _member_vineyards("p3", 1):
            forward, backward = AHomState(vineyard), AHomState(vineyard)
            edges = sorted(target.items())
            for (t, h), c in edges:
                forward.apply_insert(t, h, c)
            for (t, h), c in reversed(edges):
                backward.apply_insert(t, h, c)
            assert forward.snapshot() == backward.snapshot()
