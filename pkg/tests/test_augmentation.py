"""
Test the augmentation cascade against from-scratch fork recomputation
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle.brute_force import recompute_level_pairs
from structures.augmentation import (
    AUGMENTATION_COLOR,
    AugmentedState,
    ChangeKind,
    DirectedChange,
    ForkLayer,
    HostOp,
    HostOpKind,
    net_changes,
    replay_changes,
)
from structures.colored_graph import ColoredGraph, edge_key
from structures.errors import AugmentationError
from structures.orientation import BoundedOrientation
from structures.work import WorkCounters
from tests.conftest import make_graph


def _insert(t, h, c):
    return DirectedChange(ChangeKind.INSERT, t, h, c)


def _delete(t, h, c):
    return DirectedChange(ChangeKind.DELETE, t, h, c)


def check_cascade(state):
    """Every structural invariant of the cascade, recomputed from scratch."""
    for i in range(1, state.h + 1):
        below = state.prefix_edges(i - 1)
        assert state.level_pairs(i) == recompute_level_pairs(below)
        for u, v in state.level_pairs(i):
            witnesses = sum(1 for (t, w) in below if t == u and (v, w) in below)
            assert state.fork_witness_count(i, u, v) == witnesses
    seen = set()
    for i in range(state.h + 1):
        pairs = state.level_pairs(i)
        assert not pairs & seen
        seen |= pairs
        assert state.levels[i].max_in_degree() <= state.levels[i].cap
    assert state.edges() == state.prefix_edges(state.h)
    assert state.max_in_degree() <= state.in_degree_bound()


class TestNetChanges:

    def test_cancelling_tokens_drop(self):
        assert net_changes([_insert(1, 2, 0), _delete(1, 2, 0)]) == []

    def test_deletes_first(self):
        batch = net_changes([_insert(3, 4, 1), _delete(1, 2, 0), _insert(2, 1, 1)])
        assert [c.kind for c in batch] == [ChangeKind.DELETE, ChangeKind.INSERT, ChangeKind.INSERT]

    def test_replay(self):
        edges = {(1, 2): 0}
        replay_changes(edges, [_delete(1, 2, 0), _insert(2, 1, 1)])
        assert edges == {(2, 1): 1}


class TestForkLayer:

    def test_fork_appears_and_disappears(self):
        layer = ForkLayer(1, BoundedOrientation(4), WorkCounters())
        produced = layer.consume([_insert(1, 3, 1), _insert(2, 3, 1)])
        assert layer.witness_count(1, 2) == 1
        assert len(produced) == 1
        assert produced[0].kind is ChangeKind.INSERT
        assert edge_key(produced[0].tail, produced[0].head) == (1, 2)
        assert produced[0].color == AUGMENTATION_COLOR

        produced = layer.consume([_delete(2, 3, 1)])
        assert layer.witness_count(1, 2) == 0
        assert [c.kind for c in produced] == [ChangeKind.DELETE]
        assert len(layer.orientation) == 0

    def test_no_common_out_neighbor(self):
        layer = ForkLayer(1, BoundedOrientation(4), WorkCounters())
        assert layer.consume([_insert(1, 2, 1), _insert(3, 4, 1)]) == []
        assert layer.witness_count(1, 3) == 0

    def test_adjacent_pair_is_not_a_fork(self):
        layer = ForkLayer(1, BoundedOrientation(4), WorkCounters())
        layer.consume([_insert(1, 3, 1), _insert(2, 3, 1), _insert(1, 2, 1)])
        assert layer.witness_count(1, 2) == 1
        assert (1, 2) not in layer.orientation


class TestInit:

    def test_empty_graph(self):
        state, batch = AugmentedState.init(ColoredGraph(1, range(3)), 1)
        assert batch == []
        assert state.edges() == {}

    def test_initial_cap(self, triangle_graph):
        state, _ = AugmentedState.init(triangle_graph, 1, min_cap=4)
        assert state.caps() == [8, 8]

    def test_batch_is_union(self, bipartite_graph):
        state, batch = AugmentedState.init(bipartite_graph, 2)
        assert all(c.kind is ChangeKind.INSERT for c in batch)
        assert {(c.tail, c.head): c.color for c in batch} == state.edges()
        check_cascade(state)

    def test_triangle_has_no_forks(self, triangle_graph):
        for seed in range(5):
            state, _ = AugmentedState.init(triangle_graph, 1, seed=seed)
            assert state.level_pairs(1) == set()

    def test_fork_of_two_in_edges(self):
        g = make_graph(1, 4, [(1, 3, 1), (2, 3, 1)])
        state, _ = AugmentedState.init(g, 1)
        level0 = state.prefix_edges(0)
        if (1, 3) in level0 and (2, 3) in level0:
            assert state.level_pairs(1) == {(1, 2)}
            assert state.fork_witness_count(1, 1, 2) == 1
        check_cascade(state)

    def test_negative_depth(self):
        with pytest.raises(AugmentationError):
            AugmentedState(-1, 4)


class TestUpdates:

    def test_pair_migrates_to_level_zero(self, bipartite_graph):
        state, _ = AugmentedState.init(bipartite_graph, 1)
        forks = sorted(state.level_pairs(1))
        assert forks
        u, v = forks[0]
        old = state.levels[1].orientation_of(u, v)

        batch = state.insert(u, v, 1)
        assert _delete(old[0], old[1], AUGMENTATION_COLOR) in batch
        inserted = [c for c in batch if c.kind is ChangeKind.INSERT and edge_key(c.tail, c.head) == (u, v)]
        assert len(inserted) == 1 and inserted[0].color == 1
        assert state.level_of(u, v) == 0
        check_cascade(state)

    def test_recolor_batch(self):
        g = make_graph(2, 3, [(1, 2, 1), (0, 1, 1)])
        state, _ = AugmentedState.init(g, 1)
        tail, head = state.levels[0].orientation_of(1, 2)
        union_before = state.edges()
        batch = state.recolor(1, 2, 2)
        assert batch == [_delete(tail, head, 1), _insert(tail, head, 2)]
        union_before[(tail, head)] = 2
        assert state.edges() == union_before

    def test_delete_removes_fork(self):
        g = make_graph(1, 4, [(1, 3, 1), (2, 3, 1)])
        state, _ = AugmentedState.init(g, 1)
        state.delete(2, 3)
        assert state.fork_witness_count(1, 1, 2) == 0
        assert state.level_pairs(1) == set()

    def test_apply_dispatch(self):
        state, _ = AugmentedState.init(ColoredGraph(2, range(3)), 1)
        state.apply(HostOp(HostOpKind.INSERT, 0, 1, 1))
        state.apply(HostOp(HostOpKind.RECOLOR, 0, 1, 2))
        assert set(state.edges().values()) == {2}
        state.apply(HostOp(HostOpKind.DELETE, 0, 1))
        assert state.edges() == {}

    def test_recolor_missing(self):
        state, _ = AugmentedState.init(ColoredGraph(2, range(3)), 1)
        with pytest.raises(AugmentationError):
            state.recolor(0, 1, 2)

    def test_level_out_of_range(self, triangle_graph):
        state, _ = AugmentedState.init(triangle_graph, 1)
        with pytest.raises(AugmentationError):
            state.fork_witness_count(0, 0, 1)
        with pytest.raises(AugmentationError):
            state.level_pairs(2)

    def test_level_stats(self, bipartite_graph):
        state, _ = AugmentedState.init(bipartite_graph, 2)
        stats = state.level_stats()
        assert [s["level"] for s in stats] == [0, 1, 2]
        assert stats[0]["edges"] == 6
        assert all(s["max_in_degree"] <= s["cap"] for s in stats)


class TestRandomStreams:

    @settings(max_examples=40, deadline=None)
    @given(
        ops=st.lists(
            st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(1, 2), st.booleans()),
            max_size=40,
        ),
        h=st.integers(1, 3),
        min_cap=st.integers(1, 4),
        seed=st.integers(0, 50),
    )
    def test_matches_recomputation(self, ops, h, min_cap, seed):
        state, batch = AugmentedState.init(ColoredGraph(2, range(7)), h, min_cap=min_cap, seed=seed)
        replayed = {}
        replay_changes(replayed, batch)
        host = {}
        for u, v, c, recolor in ops:
            if u == v:
                continue
            key = edge_key(u, v)
            if key not in host:
                batch = state.insert(u, v, c)
                host[key] = c
            elif recolor and host[key] != c:
                batch = state.recolor(u, v, c)
                host[key] = c
            else:
                batch = state.delete(u, v)
                del host[key]
            replay_changes(replayed, batch)
            assert replayed == state.edges()
            level0 = state.prefix_edges(0)
            assert {edge_key(t, hd): col for (t, hd), col in level0.items()} == host
            check_cascade(state)
