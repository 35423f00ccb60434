"""
Dynamic homomorphism counter for one vineyard pattern.

For every maintained clan C other than the full one, S[(C, w)] counts the
homomorphisms of the extended clan C* into the augmented host that send the
ghosts of C to the tuple w. For the full clan the counts are kept per image
of the pattern root (root_counts) and summed in total. Only non-zero values
are stored.

An update of edge (x, y) with color c runs, for each clan and each update
skeleton of color c, a backtracking search for the partial homomorphisms of
C*[M] that send exactly the skeleton's X-edges onto (x, y); each one
contributes the product of the child clans' S values. Insertions visit the
clans from the largest down and deletions from the smallest up, so child
values always describe the graph without the edge.
"""

import logging
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from patterns.clans import MatchStep, UpdateSkeleton, reachable_clans
from patterns.vineyard import VineyardPattern
from structures.augmentation import ChangeKind, DirectedChange
from structures.errors import EdgeNotInViewError, EngineError
from structures.work import WorkCounters

logger = logging.getLogger("isub.engine")

SKey = Tuple[int, Tuple[int, ...]]


class AHomState:
    """Count tables of one vineyard pattern over the augmented host."""

    def __init__(self, vineyard: VineyardPattern, counters: Optional[WorkCounters] = None):
        if not vineyard.clans:
            raise EngineError("vineyard has no clan table; compile it first")
        self.vineyard = vineyard
        self.counters = counters if counters is not None else WorkCounters()
        self._clans = {clan.clan_id: clan for clan in vineyard.clans}
        self._full_id = vineyard.clans[-1].clan_id
        self._skeletons = vineyard.skeletons
        maintained = reachable_clans(vineyard.clans, vineyard.skeletons)
        ascending = sorted(maintained, key=lambda cid: (self._clans[cid].size, cid))
        self._ascending: List[int] = ascending
        self._descending: List[int] = list(reversed(ascending))

        self._out: Dict[int, Dict[int, int]] = {}
        self._in: Dict[int, Dict[int, int]] = {}
        self._s: Dict[SKey, int] = {}
        self._root_counts: Dict[int, int] = {}
        self._total = 0

    # ==================== Queries ====================

    def total(self) -> int:
        return self._total

    def root_count(self, v: int) -> int:
        return self._root_counts.get(v, 0)

    def s_value(self, clan_id: int, ghosts: Tuple[int, ...]) -> int:
        return self._s.get((clan_id, tuple(ghosts)), 0)

    @property
    def maintained_clans(self) -> List[int]:
        return list(self._ascending)

    def num_entries(self) -> int:
        return len(self._s) + len(self._root_counts)

    def view_edges(self) -> Dict[Tuple[int, int], int]:
        return {(t, h): c for t, heads in self._out.items() for h, c in heads.items()}

    def in_degree(self, v: int) -> int:
        return len(self._in.get(v, ()))

    def snapshot(self) -> Tuple[Dict[SKey, int], Dict[int, int], int]:
        return dict(self._s), dict(self._root_counts), self._total

    # ==================== Updates ====================

    def apply_insert(self, x: int, y: int, c: int) -> None:
        if y in self._out.get(x, ()) or x in self._out.get(y, ()):
            raise EngineError(f"pair {{{x},{y}}} already present in the engine view")
        self._out.setdefault(x, {})[y] = c
        self._in.setdefault(y, {})[x] = c
        for clan_id in self._descending:
            self._update(clan_id, x, y, c, 1)

    def apply_delete(self, x: int, y: int, c: int) -> None:
        if self._out.get(x, {}).get(y) != c:
            raise EdgeNotInViewError(f"edge ({x},{y}) with color {c} not present in the engine view")
        for clan_id in self._ascending:
            self._update(clan_id, x, y, c, -1)
        del self._out[x][y]
        del self._in[y][x]
        if not self._out[x]:
            del self._out[x]
        if not self._in[y]:
            del self._in[y]

    def apply_change(self, change: DirectedChange) -> None:
        if change.kind is ChangeKind.INSERT:
            self.apply_insert(change.tail, change.head, change.color)
        else:
            self.apply_delete(change.tail, change.head, change.color)

    def apply_batch(self, changes: Iterable[DirectedChange]) -> None:
        for change in changes:
            self.apply_change(change)

    # ==================== Internals ====================

    def _update(self, clan_id: int, x: int, y: int, c: int, sign: int) -> None:
        entries = self._skeletons.get((clan_id, c))
        if not entries:
            return
        clan = self._clans[clan_id]
        full = clan_id == self._full_id
        for skeleton in entries:
            phi = {t: x for t in skeleton.tails}
            phi.update({h: y for h in skeleton.heads})
            for assignment in self._matches(skeleton, phi, x, y):
                self.counters.enumerations += 1
                value = 1
                for child in skeleton.children:
                    value *= self._s.get((child.clan_id, tuple(assignment[g] for g in child.ghosts)), 0)
                    if not value:
                        break
                if not value:
                    continue
                delta = sign * value
                self.counters.s_updates += 1
                if full:
                    self._bump(self._root_counts, assignment[clan.root], delta)
                    self._total += delta
                else:
                    self._bump(self._s, (clan_id, tuple(assignment[g] for g in clan.ghosts)), delta)

    @staticmethod
    def _bump(table: dict, key, delta: int) -> None:
        value = table.get(key, 0) + delta
        if value:
            table[key] = value
        else:
            table.pop(key, None)

    def _matches(self, skeleton: UpdateSkeleton, phi: Dict, x: int, y: int) -> Iterator[Dict]:
        """Backtrack over the match steps; yields phi itself, valid until the next item."""
        steps = skeleton.steps

        def extend(i: int) -> Iterator[Dict]:
            if i == len(steps):
                yield phi
                return
            step: MatchStep = steps[i]
            for candidate, color in self._in.get(phi[step.anchor], {}).items():
                if color != step.color:
                    continue
                phi[step.vertex] = candidate
                if self._consistent(step, phi, x, y):
                    yield from extend(i + 1)
            phi.pop(step.vertex, None)

        return extend(0)

    def _consistent(self, step: MatchStep, phi: Dict, x: int, y: int) -> bool:
        for t, h, color in step.checks:
            a, b = phi[t], phi[h]
            if a == x and b == y:
                return False
            if self._out.get(a, {}).get(b) != color:
                return False
        return True
