"""
Dynamic h-th augmentation of the host graph.

Level 0 is a bounded orientation of the host graph. Level i >= 1 is a
bounded orientation of the fork pairs of the union of levels 0..i-1: pairs
of distinct, non-adjacent vertices with at least one common out-neighbor.
Each fork layer keeps its own view of that union plus sparse witness
counters (number of common out-neighbors per pair).

Every host update returns a batch of DirectedChange values describing how
the union digraph changed. Batches list all deletions before all insertions,
so replaying one never creates a parallel or anti-parallel pair even when a
pair migrates between levels in the same update.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .colored_graph import ColoredGraph, Pair, degeneracy, edge_key
from .errors import AugmentationError
from .orientation import BoundedOrientation, EventKind, OrientationEvent
from .work import WorkCounters

logger = logging.getLogger("isub.augmentation")

AUGMENTATION_COLOR = 0


class ChangeKind(Enum):
    INSERT = "insert"
    DELETE = "delete"


@dataclass(frozen=True)
class DirectedChange:
    kind: ChangeKind
    tail: int
    head: int
    color: int


class HostOpKind(Enum):
    INSERT = "insert"
    DELETE = "delete"
    RECOLOR = "recolor"


@dataclass(frozen=True)
class HostOp:
    kind: HostOpKind
    u: int
    v: int
    color: Optional[int] = None


def net_changes(changes: Iterable[DirectedChange]) -> List[DirectedChange]:
    """
    Collapse a sequential change stream into its net effect: deletions of
    edges that are gone, then insertions of edges that are new. Tokens that
    are inserted and deleted again cancel.
    """
    balance: Dict[Tuple[int, int, int], int] = {}
    for change in changes:
        token = (change.tail, change.head, change.color)
        delta = 1 if change.kind is ChangeKind.INSERT else -1
        balance[token] = balance.get(token, 0) + delta

    deletes = sorted(t for t, b in balance.items() if b < 0)
    inserts = sorted(t for t, b in balance.items() if b > 0)
    return (
        [DirectedChange(ChangeKind.DELETE, *t) for t in deletes]
        + [DirectedChange(ChangeKind.INSERT, *t) for t in inserts]
    )


def replay_changes(edges: Dict[Tuple[int, int], int], changes: Iterable[DirectedChange]) -> None:
    """Apply a change batch to a (tail, head) -> color map in place."""
    for change in changes:
        key = (change.tail, change.head)
        if change.kind is ChangeKind.INSERT:
            edges[key] = change.color
        else:
            del edges[key]


def _events_to_changes(
    events: List[OrientationEvent], color_of: Dict[Pair, int], default_color: Optional[int] = None
) -> List[DirectedChange]:
    changes: List[DirectedChange] = []
    for event in events:
        key = edge_key(event.tail, event.head)
        color = color_of.get(key, default_color)
        if event.kind is EventKind.ADDED:
            changes.append(DirectedChange(ChangeKind.INSERT, event.tail, event.head, color))
        elif event.kind is EventKind.REMOVED:
            changes.append(DirectedChange(ChangeKind.DELETE, event.tail, event.head, color))
        else:
            changes.append(DirectedChange(ChangeKind.DELETE, event.tail, event.head, color))
            changes.append(DirectedChange(ChangeKind.INSERT, event.head, event.tail, color))
    return changes


class ForkLayer:
    """
    Level i >= 1: tracks the union of lower levels and orients its fork pairs.
    """

    def __init__(self, level: int, orientation: BoundedOrientation, counters: WorkCounters):
        self.level = level
        self.orientation = orientation
        self.counters = counters
        self._out: Dict[int, Set[int]] = {}
        self._in: Dict[int, Set[int]] = {}
        self._witness: Dict[Pair, int] = {}

    def witness_count(self, u: int, v: int) -> int:
        return self._witness.get(edge_key(u, v), 0)

    def _adjacent(self, u: int, v: int) -> bool:
        return v in self._out.get(u, ()) or u in self._out.get(v, ())

    def _bump(self, a: int, u: int, delta: int, touched: Set[Pair]) -> None:
        key = edge_key(a, u)
        value = self._witness.get(key, 0) + delta
        if value:
            self._witness[key] = value
        else:
            del self._witness[key]
        touched.add(key)
        self.counters.fork_updates += 1

    def consume(self, changes: List[DirectedChange]) -> List[DirectedChange]:
        """
        Apply a consistent change stream of the lower union, then bring the
        fork-pair set of this level up to date. Returns this level's changes.
        """
        touched: Set[Pair] = set()
        for change in changes:
            a, b = change.tail, change.head
            if change.kind is ChangeKind.INSERT:
                for u in self._in.get(b, ()):
                    if u != a:
                        self._bump(a, u, 1, touched)
                self._out.setdefault(a, set()).add(b)
                self._in.setdefault(b, set()).add(a)
            else:
                self._out[a].discard(b)
                self._in[b].discard(a)
                if not self._out[a]:
                    del self._out[a]
                if not self._in[b]:
                    del self._in[b]
                for u in self._in.get(b, ()):
                    self._bump(a, u, -1, touched)
            touched.add(edge_key(a, b))

        removals: List[Pair] = []
        additions: List[Pair] = []
        for key in sorted(touched):
            wanted = self._witness.get(key, 0) > 0 and not self._adjacent(*key)
            present = key in self.orientation
            if present and not wanted:
                removals.append(key)
            elif wanted and not present:
                additions.append(key)

        events: List[OrientationEvent] = []
        for key in removals:
            events.append(self.orientation.delete(*key))
        for key in additions:
            events.extend(self.orientation.insert(*key))
        self.counters.fork_changes += len(removals) + len(additions)
        return _events_to_changes(events, {}, AUGMENTATION_COLOR)


class AugmentedState:
    """
    Cascade of oriented levels G_0..G_h and their union digraph.

    Level 0 carries host colors {1..k}; every higher level carries color 0.
    """

    def __init__(
        self,
        h: int,
        cap: int,
        *,
        strict: bool = False,
        seed: int = 0,
        counters: Optional[WorkCounters] = None,
    ):
        if h < 0:
            raise AugmentationError(f"augmentation depth must be non-negative, got {h}")
        self.h = h
        self.counters = counters if counters is not None else WorkCounters()
        self.levels: List[BoundedOrientation] = [
            BoundedOrientation(
                cap,
                strict=strict if i == 0 else False,
                seed=seed * 1009 + i,
                counters=self.counters,
                name=f"level-{i}",
            )
            for i in range(h + 1)
        ]
        self._layers: List[ForkLayer] = [
            ForkLayer(i, self.levels[i], self.counters) for i in range(1, h + 1)
        ]
        self._host_colors: Dict[Pair, int] = {}
        self._union: Dict[Tuple[int, int], int] = {}

    @classmethod
    def init(
        cls,
        g: ColoredGraph,
        h: int,
        *,
        min_cap: int = 4,
        strict: bool = False,
        seed: int = 0,
        counters: Optional[WorkCounters] = None,
    ) -> Tuple["AugmentedState", List[DirectedChange]]:
        """
        Build the cascade by inserting the host edges one at a time. The
        returned batch holds the insertions of the resulting union.
        """
        cap = max(min_cap, 4 * degeneracy(g))
        state = cls(h, cap, strict=strict, seed=seed, counters=counters)
        stream: List[DirectedChange] = []
        for u, v, c in sorted(g.edges()):
            stream.extend(state.insert(u, v, c))
        logger.info("augmentation initialised: h=%d, cap=%d, union edges=%d", h, cap, len(state._union))
        return state, net_changes(stream)

    # ==================== Updates ====================

    def apply(self, op: HostOp) -> List[DirectedChange]:
        if op.kind is HostOpKind.INSERT:
            return self.insert(op.u, op.v, op.color)
        if op.kind is HostOpKind.DELETE:
            return self.delete(op.u, op.v)
        return self.recolor(op.u, op.v, op.color)

    def insert(self, u: int, v: int, color: int) -> List[DirectedChange]:
        events = self.levels[0].insert(u, v)
        self._host_colors[edge_key(u, v)] = color
        return self._propagate(_events_to_changes(events, self._host_colors))

    def delete(self, u: int, v: int) -> List[DirectedChange]:
        event = self.levels[0].delete(u, v)
        changes = _events_to_changes([event], self._host_colors)
        del self._host_colors[edge_key(u, v)]
        return self._propagate(changes)

    def recolor(self, u: int, v: int, color: int) -> List[DirectedChange]:
        """Recolor a level-0 edge; forks ignore colors so no other level moves."""
        tail, head = self.levels[0].orientation_of(u, v) or (None, None)
        if tail is None:
            raise AugmentationError(f"no host edge {{{u},{v}}} to recolor")
        key = edge_key(u, v)
        old = self._host_colors[key]
        self._host_colors[key] = color
        changes = [
            DirectedChange(ChangeKind.DELETE, tail, head, old),
            DirectedChange(ChangeKind.INSERT, tail, head, color),
        ]
        replay_changes(self._union, changes)
        return changes

    def _propagate(self, level0: List[DirectedChange]) -> List[DirectedChange]:
        raw = list(level0)
        for layer in self._layers:
            produced = layer.consume(net_changes(raw))
            raw.extend(produced)
            logger.debug("level %d: %d changes", layer.level, len(produced))
        batch = net_changes(raw)
        replay_changes(self._union, batch)
        return batch

    # ==================== Queries ====================

    def fork_witness_count(self, level: int, u: int, v: int) -> int:
        if not 1 <= level <= self.h:
            raise AugmentationError(f"level {level} outside 1..{self.h}")
        return self._layers[level - 1].witness_count(u, v)

    def edges(self) -> Dict[Tuple[int, int], int]:
        """The union digraph as (tail, head) -> color."""
        return dict(self._union)

    def level_pairs(self, level: int) -> Set[Pair]:
        if not 0 <= level <= self.h:
            raise AugmentationError(f"level {level} outside 0..{self.h}")
        return set(self.levels[level].heads())

    def level_of(self, u: int, v: int) -> Optional[int]:
        for i, orientation in enumerate(self.levels):
            if (u, v) in orientation:
                return i
        return None

    def prefix_edges(self, level: int) -> Dict[Tuple[int, int], int]:
        """Union of levels 0..level as (tail, head) -> color."""
        edges: Dict[Tuple[int, int], int] = {}
        for i in range(level + 1):
            for tail, head in self.levels[i].edges():
                edges[(tail, head)] = self._host_colors[edge_key(tail, head)] if i == 0 else AUGMENTATION_COLOR
        return edges

    def caps(self) -> List[int]:
        return [level.cap for level in self.levels]

    def in_degree_bound(self) -> int:
        return sum(self.caps())

    def max_in_degree(self) -> int:
        indeg: Dict[int, int] = {}
        for _, head in self._union:
            indeg[head] = indeg.get(head, 0) + 1
        return max(indeg.values(), default=0)

    def level_stats(self) -> List[Dict[str, int]]:
        return [
            {
                "level": i,
                "cap": level.cap,
                "edges": len(level),
                "max_in_degree": level.max_in_degree(),
                "flips": level.flips,
            }
            for i, level in enumerate(self.levels)
        ]
