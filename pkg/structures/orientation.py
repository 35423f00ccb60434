"""
Bounded in-degree orientation of a dynamic undirected graph.

Insertions orient the new edge towards the endpoint with the smaller
in-degree (ties broken by a seeded RNG). Whenever a vertex exceeds the cap,
all of its in-edges are flipped and the newly overfull vertices are repaired
in turn. Deletions never touch other edges. Every change is reported as an
OrientationEvent so the levels above can replay it.
"""

import logging
import random
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .colored_graph import Pair, edge_key, peeling_order
from .errors import CapacityExceededError, DuplicatePairError, MissingPairError
from .work import WorkCounters

logger = logging.getLogger("isub.orientation")


class EventKind(Enum):
    ADDED = "added"
    REMOVED = "removed"
    FLIPPED = "flipped"


@dataclass(frozen=True)
class OrientationEvent:
    """
    One orientation change. For FLIPPED, tail->head is the orientation
    before the flip (it becomes head->tail).
    """

    kind: EventKind
    tail: int
    head: int


def replay_events(heads: Dict[Pair, int], events: List[OrientationEvent]) -> None:
    """Apply an event batch to a pair -> head map in place."""
    for event in events:
        key = edge_key(event.tail, event.head)
        if event.kind is EventKind.ADDED:
            heads[key] = event.head
        elif event.kind is EventKind.REMOVED:
            del heads[key]
        else:
            heads[key] = event.tail


class BoundedOrientation:
    """
    Orientation with every in-degree at most `cap`.

    In strict mode a failed repair is rolled back exactly and surfaced as
    CapacityExceededError. Otherwise the cap is doubled and the orientation
    rebuilt, which keeps the structure total on inputs that drift out of the
    declared sparsity class.
    """

    def __init__(
        self,
        cap: int,
        *,
        strict: bool = False,
        seed: int = 0,
        counters: Optional[WorkCounters] = None,
        name: str = "orientation",
    ):
        if cap < 1:
            raise ValueError(f"cap must be positive, got {cap}")
        self._cap = cap
        self.strict = strict
        self.name = name
        self.counters = counters if counters is not None else WorkCounters()
        self._rng = random.Random(seed)
        self.flips = 0
        self._out: Dict[int, Set[int]] = {}
        self._in: Dict[int, Set[int]] = {}
        self._head: Dict[Pair, int] = {}

    # ==================== Queries ====================

    @property
    def cap(self) -> int:
        return self._cap

    def __len__(self) -> int:
        return len(self._head)

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        return edge_key(*pair) in self._head

    def orientation_of(self, u: int, v: int) -> Optional[Tuple[int, int]]:
        """(tail, head) of the pair, or None when absent."""
        head = self._head.get(edge_key(u, v))
        if head is None:
            return None
        return (u, v) if head == v else (v, u)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Oriented edges as (tail, head)."""
        for (a, b), head in self._head.items():
            yield (a, b) if head == b else (b, a)

    def heads(self) -> Dict[Pair, int]:
        return dict(self._head)

    def in_neighbors(self, v: int) -> Set[int]:
        return self._in.get(v, set())

    def out_neighbors(self, v: int) -> Set[int]:
        return self._out.get(v, set())

    def in_degree(self, v: int) -> int:
        return len(self._in.get(v, ()))

    def max_in_degree(self) -> int:
        return max((len(s) for s in self._in.values()), default=0)

    # ==================== Low-level edits ====================

    def _attach(self, tail: int, head: int) -> None:
        self._out.setdefault(tail, set()).add(head)
        self._in.setdefault(head, set()).add(tail)
        self._head[edge_key(tail, head)] = head

    def _detach(self, tail: int, head: int) -> None:
        self._out[tail].discard(head)
        self._in[head].discard(tail)
        if not self._out[tail]:
            del self._out[tail]
        if not self._in[head]:
            del self._in[head]
        del self._head[edge_key(tail, head)]

    def _flip(self, tail: int, head: int) -> None:
        self._detach(tail, head)
        self._attach(head, tail)
        self.flips += 1
        self.counters.flips += 1

    # ==================== Operations ====================

    def insert(self, u: int, v: int) -> List[OrientationEvent]:
        """Add the pair {u, v}; returns the Added event plus any flips."""
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if edge_key(u, v) in self._head:
            raise DuplicatePairError(f"pair {{{u},{v}}} already oriented in {self.name}")

        du, dv = self.in_degree(u), self.in_degree(v)
        if du == dv:
            head = v if self._rng.random() < 0.5 else u
        else:
            head = v if dv < du else u
        tail = u if head == v else v
        self._attach(tail, head)
        events = [OrientationEvent(EventKind.ADDED, tail, head)]

        if self.in_degree(head) <= self._cap:
            return events

        repaired, flipped = self._repair(head)
        if repaired:
            events.extend(OrientationEvent(EventKind.FLIPPED, a, b) for a, b in flipped)
            return events

        if self.strict:
            self._rollback(flipped, (tail, head))
            raise CapacityExceededError(
                f"{self.name}: in-degree cap {self._cap} infeasible after inserting {{{u},{v}}}",
                cap=self._cap,
                flips=len(flipped),
            )

        new_cap = self._cap * 2
        logger.warning(
            "%s: repair exceeded %d flips at cap %d; doubling cap to %d",
            self.name, len(self._head), self._cap, new_cap,
        )
        events.extend(OrientationEvent(EventKind.FLIPPED, a, b) for a, b in flipped)
        events.extend(self.rebuild(new_cap))
        return events

    def _repair(self, start: int) -> Tuple[bool, List[Tuple[int, int]]]:
        """
        Flip all in-edges of overfull vertices until every in-degree is at
        most the cap. Returns (success, flipped (old tail, old head) pairs);
        success is False once more than |E| flips were needed.
        """
        budget = len(self._head)
        flipped: List[Tuple[int, int]] = []
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if self.in_degree(v) <= self._cap:
                continue
            for u in sorted(self._in[v]):
                self._flip(u, v)
                flipped.append((u, v))
                if self.in_degree(u) > self._cap:
                    queue.append(u)
            if len(flipped) > budget:
                return False, flipped
        return True, flipped

    def _rollback(self, flipped: List[Tuple[int, int]], added: Tuple[int, int]) -> None:
        """Undo flips in reverse order, then drop the edge that triggered them."""
        for tail, head in reversed(flipped):
            self._detach(head, tail)
            self._attach(tail, head)
        self.flips -= len(flipped)
        self.counters.flips -= len(flipped)
        self._detach(*added)

    def delete(self, u: int, v: int) -> OrientationEvent:
        """Remove the pair {u, v} without changing any other orientation."""
        oriented = self.orientation_of(u, v)
        if oriented is None:
            raise MissingPairError(f"pair {{{u},{v}}} not present in {self.name}")
        self._detach(*oriented)
        return OrientationEvent(EventKind.REMOVED, *oriented)

    def rebuild(self, new_cap: int) -> List[OrientationEvent]:
        """
        Re-orient every edge under a larger cap using min-degree peeling
        order (in-degree of each vertex = its degree when peeled). The cap
        keeps doubling while the degeneracy exceeds it. Only edges whose
        orientation changed are reported, as FLIPPED events.
        """
        if new_cap <= self._cap:
            raise ValueError(f"new cap {new_cap} must exceed current cap {self._cap}")
        self.counters.rebuilds += 1

        adjacency: Dict[int, Set[int]] = {}
        for a, b in self._head:
            adjacency.setdefault(a, set()).add(b)
            adjacency.setdefault(b, set()).add(a)
        order, degen = peeling_order(adjacency)
        while new_cap < degen:
            new_cap *= 2
        self._cap = new_cap

        old_heads = dict(self._head)
        self._out.clear()
        self._in.clear()
        self._head.clear()
        peeled: Set[int] = set()
        for v in order:
            for w in adjacency[v]:
                if w not in peeled:
                    self._attach(w, v)
            peeled.add(v)

        events = []
        for key in sorted(old_heads):
            old_head = old_heads[key]
            if self._head[key] != old_head:
                old_tail = key[0] if old_head == key[1] else key[1]
                events.append(OrientationEvent(EventKind.FLIPPED, old_tail, old_head))
        logger.info("%s: rebuilt under cap %d, %d edges re-oriented", self.name, new_cap, len(events))
        return events
