"""
Clans of a vineyard and the precomputed update skeletons of the engine.

A clan is a vertex set closed under out-neighbors on which T induces an
outbranching. Its ghosts are the in-neighbors from outside, ordered from the
clan root upwards along T. The extended clan C* is the pattern induced on
the clan plus its ghosts, without ghost-ghost edges.

For an inserted or deleted host edge (x, y) of color c, and for every
non-empty set X of color-c edges of C* that may all map onto (x, y), the
skeleton fixes the vertex set M (everything with a directed path to a head
of X), the order in which the rest of M is matched, and the child clans
that make up C* - M.
"""

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Set, Tuple

import networkx as nx

from structures.errors import ClanStructureError

from .pattern import DirectedPattern, Vertex, vertex_order
from .vineyard import VineyardPattern


@dataclass(frozen=True)
class Clan:
    clan_id: int
    vertices: FrozenSet[Vertex]
    root: Vertex
    ghosts: Tuple[Vertex, ...]
    extended: DirectedPattern

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ChildRef:
    clan_id: int
    ghosts: Tuple[Vertex, ...]


@dataclass(frozen=True)
class MatchStep:
    """Match `vertex` among the in-neighbors of the image of `anchor` along a `color` edge."""

    vertex: Vertex
    anchor: Vertex
    color: int
    checks: Tuple[Tuple[Vertex, Vertex, int], ...]


@dataclass(frozen=True)
class UpdateSkeleton:
    clan_id: int
    color: int
    x_edges: Tuple[Tuple[Vertex, Vertex], ...]
    tails: Tuple[Vertex, ...]
    heads: Tuple[Vertex, ...]
    m: FrozenSet[Vertex]
    steps: Tuple[MatchStep, ...]
    children: Tuple[ChildRef, ...]


# ==================== Clans ====================

def _clan_key(vertices: FrozenSet[Vertex]) -> Tuple[int, list]:
    return (len(vertices), sorted(vertex_order(v) for v in vertices))


def is_clan(vp: VineyardPattern, vertices: FrozenSet[Vertex]) -> bool:
    if not vertices:
        return False
    pattern = vp.pattern
    if any(w not in vertices for v in vertices for w in pattern.out_neighbors(v)):
        return False
    inner_tree_edges = sum(1 for v in vertices if vp.parent[v] is not None and vp.parent[v] in vertices)
    return inner_tree_edges == len(vertices) - 1


def _describe_clan(vp: VineyardPattern, clan_id: int, vertices: FrozenSet[Vertex]) -> Clan:
    pattern = vp.pattern
    root = next(v for v in vertices if vp.parent[v] is None or vp.parent[v] not in vertices)
    outside = {u for v in vertices for u in pattern.in_neighbors(v) if u not in vertices}
    ancestors = vp.ancestors(root)
    if not outside <= set(ancestors):
        raise ClanStructureError(f"ghosts of clan {sorted(vertices, key=vertex_order)} leave the root path")
    ghosts = tuple(a for a in ancestors if a in outside)
    keep = vertices | outside
    extended = DirectedPattern(
        keep,
        [
            (t, h, c)
            for t, h, c in pattern.edges()
            if t in keep and h in keep and not (t in outside and h in outside)
        ],
    )
    return Clan(clan_id, vertices, root, ghosts, extended)


def enumerate_clans(vp: VineyardPattern) -> List[Clan]:
    """All clans ordered by (size, vertices); the full vertex set is last."""
    vertices = sorted(vp.pattern.vertices, key=vertex_order)
    found = [
        frozenset(combo)
        for size in range(1, len(vertices) + 1)
        for combo in itertools.combinations(vertices, size)
        if is_clan(vp, frozenset(combo))
    ]
    found.sort(key=_clan_key)
    return [_describe_clan(vp, i, members) for i, members in enumerate(found)]


# ==================== Update skeletons ====================

def _admissible(extended: DirectedPattern, x_edges: Tuple[Tuple[Vertex, Vertex], ...]) -> bool:
    """X can map onto one edge (x, y): every other C*-edge must avoid (x, y) and (y, x)."""
    tails = {t for t, _ in x_edges}
    heads = {h for _, h in x_edges}
    if tails & heads:
        return False
    x_set = set(x_edges)
    for t, h, _ in extended.edges():
        if (t in tails and h in tails) or (t in heads and h in heads):
            return False
        if t in heads and h in tails:
            return False
        if t in tails and h in heads and (t, h) not in x_set:
            return False
    return True


def _reaching(extended: DirectedPattern, heads: Set[Vertex]) -> Set[Vertex]:
    found = set(heads)
    queue = deque(heads)
    while queue:
        v = queue.popleft()
        for u in extended.in_neighbors(v):
            if u not in found:
                found.add(u)
                queue.append(u)
    return found


def _match_order(
    extended: DirectedPattern, tails: Set[Vertex], heads: Set[Vertex], m: Set[Vertex]
) -> Tuple[MatchStep, ...]:
    fixed = tails | heads
    seen = set(fixed)
    queue = deque(sorted(heads, key=vertex_order) + sorted(tails, key=vertex_order))
    order: List[Tuple[Vertex, Vertex, int]] = []
    while queue:
        anchor = queue.popleft()
        for z in sorted(extended.in_neighbors(anchor), key=vertex_order):
            if z in seen:
                continue
            seen.add(z)
            queue.append(z)
            order.append((z, anchor, extended.color(z, anchor)))

    steps = []
    assigned = set(fixed)
    for vertex, anchor, color in order:
        checks = tuple(
            (t, h, c)
            for t, h, c in extended.edges()
            if t in m and h in m and vertex in (t, h) and (h if t == vertex else t) in assigned
        )
        steps.append(MatchStep(vertex, anchor, color, checks))
        assigned.add(vertex)
    return tuple(steps)


def _skeleton(
    clan: Clan, color: int, x_edges: Tuple[Tuple[Vertex, Vertex], ...], by_vertices: Dict[FrozenSet[Vertex], Clan]
) -> UpdateSkeleton:
    extended = clan.extended
    tails = {t for t, _ in x_edges}
    heads = {h for _, h in x_edges}
    m = _reaching(extended, heads)
    required = {clan.root, *clan.ghosts}
    if not required <= m:
        raise ClanStructureError(f"clan {clan.clan_id}: root or ghost outside M for X={x_edges}")

    rest = [v for v in extended.vertices if v not in m]
    children: List[ChildRef] = []
    if rest:
        graph = nx.Graph()
        graph.add_nodes_from(rest)
        graph.add_edges_from((t, h) for t, h, _ in extended.edges() if t not in m and h not in m)
        for component in sorted(nx.connected_components(graph), key=lambda c: _clan_key(frozenset(c))):
            child = by_vertices.get(frozenset(component))
            if child is None:
                raise ClanStructureError(
                    f"clan {clan.clan_id}: component {sorted(component, key=vertex_order)} of C* - M is not a clan"
                )
            if not set(child.ghosts) <= m:
                raise ClanStructureError(f"clan {clan.clan_id}: ghosts of child {child.clan_id} outside M")
            children.append(ChildRef(child.clan_id, child.ghosts))

    return UpdateSkeleton(
        clan_id=clan.clan_id,
        color=color,
        x_edges=x_edges,
        tails=tuple(sorted(tails, key=vertex_order)),
        heads=tuple(sorted(heads, key=vertex_order)),
        m=frozenset(m),
        steps=_match_order(extended, tails, heads, m),
        children=tuple(children),
    )


def build_update_skeletons(
    vp: VineyardPattern, clans: List[Clan]
) -> Dict[Tuple[int, int], List[UpdateSkeleton]]:
    """(clan id, color) -> skeletons for every admissible edge set X of that color."""
    by_vertices = {clan.vertices: clan for clan in clans}
    skeletons: Dict[Tuple[int, int], List[UpdateSkeleton]] = {}
    for clan in clans:
        by_color: Dict[int, List[Tuple[Vertex, Vertex]]] = {}
        for t, h, c in clan.extended.edges():
            by_color.setdefault(c, []).append((t, h))
        for color, edges in sorted(by_color.items()):
            entries = []
            for size in range(1, len(edges) + 1):
                for x_edges in itertools.combinations(edges, size):
                    if _admissible(clan.extended, x_edges):
                        entries.append(_skeleton(clan, color, x_edges, by_vertices))
            if entries:
                skeletons[(clan.clan_id, color)] = entries
    return skeletons


def reachable_clans(clans: List[Clan], skeletons: Dict[Tuple[int, int], List[UpdateSkeleton]]) -> List[int]:
    """Clan ids whose tables the full clan depends on, full clan included."""
    full = clans[-1].clan_id
    reached = {full}
    stack = [full]
    while stack:
        clan_id = stack.pop()
        for (owner, _), entries in skeletons.items():
            if owner != clan_id:
                continue
            for entry in entries:
                for child in entry.children:
                    if child.clan_id not in reached:
                        reached.add(child.clan_id)
                        stack.append(child.clan_id)
    return sorted(reached)
