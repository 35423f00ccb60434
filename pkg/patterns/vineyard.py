"""
Vineyard construction: an outbranching T inside a connected elder digraph H
such that the endpoints of every H-edge lie on one directed T-path.

Built recursively: drop a vertex v that is not a cut vertex, build T for the
rest, then splice v back in. If v points at the old root it becomes the new
root. Otherwise its in-neighbors form a chain on one root path Q; v hangs
below the deepest of them, and every subtree of T - Q holding an
out-neighbor of v is re-hung below v.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set

import networkx as nx

from structures.errors import NotConnectedError, NotElderError, PatternError

from .pattern import DirectedPattern, Vertex, vertex_order

logger = logging.getLogger("isub.compiler")


@dataclass
class VineyardPattern:
    """Elder digraph with its outbranching; clans and skeletons are filled by the compiler."""

    pattern: DirectedPattern
    parent: Dict[Vertex, Optional[Vertex]]
    root: Vertex
    clans: list = field(default_factory=list)
    skeletons: dict = field(default_factory=dict)

    def depth(self, v: Vertex) -> int:
        d = 0
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
        return d

    def ancestors(self, v: Vertex) -> List[Vertex]:
        """Proper T-ancestors of v, nearest first."""
        chain = []
        while self.parent[v] is not None:
            v = self.parent[v]
            chain.append(v)
        return chain

    def tree_edges(self) -> List[tuple]:
        return sorted(
            ((p, v) for v, p in self.parent.items() if p is not None),
            key=lambda e: (vertex_order(e[0]), vertex_order(e[1])),
        )

    def on_common_path(self, u: Vertex, v: Vertex) -> bool:
        return u in self.ancestors(v) or v in self.ancestors(u)

    def is_valid(self) -> bool:
        """T is an outbranching inside H and every H-edge lies on a T-path."""
        roots = [v for v, p in self.parent.items() if p is None]
        if roots != [self.root] or set(self.parent) != set(self.pattern.vertices):
            return False
        if any(not self.pattern.has_edge(p, v) for p, v in self.tree_edges()):
            return False
        return all(self.on_common_path(t, h) for t, h, _ in self.pattern.edges())


def _underlying(pattern: DirectedPattern, vertices: Set[Vertex]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from((t, h) for t, h, _ in pattern.edges() if t in vertices and h in vertices)
    return graph


def _subtree(children: Dict[Vertex, List[Vertex]], top: Vertex) -> Set[Vertex]:
    found, stack = set(), [top]
    while stack:
        v = stack.pop()
        found.add(v)
        stack.extend(children.get(v, ()))
    return found


def _outbranching(pattern: DirectedPattern, vertices: FrozenSet[Vertex]) -> Dict[Vertex, Optional[Vertex]]:
    if len(vertices) == 1:
        return {next(iter(vertices)): None}

    cut = set(nx.articulation_points(_underlying(pattern, set(vertices))))
    v = min((x for x in vertices if x not in cut), key=vertex_order)
    parent = _outbranching(pattern, vertices - {v})
    root = next(x for x, p in parent.items() if p is None)

    if pattern.has_edge(v, root):
        parent[root] = v
        parent[v] = None
        return parent

    in_neighbors = [u for u in pattern.in_neighbors(v) if u in vertices]
    if not in_neighbors:
        raise NotElderError(f"vertex {v} has no in-neighbor and does not point at the root")

    def depth(x: Vertex) -> int:
        d = 0
        while parent[x] is not None:
            x = parent[x]
            d += 1
        return d

    z = max(in_neighbors, key=depth)
    path = {z}
    x = z
    while parent[x] is not None:
        x = parent[x]
        path.add(x)
    if not set(in_neighbors) <= path:
        raise NotElderError(f"in-neighbors of {v} do not lie on one root path")

    children: Dict[Vertex, List[Vertex]] = {}
    for x, p in parent.items():
        if p is not None:
            children.setdefault(p, []).append(x)
    out_neighbors = {w for w in pattern.out_neighbors(v) if w in vertices}
    # subtrees of T - Q hang from a path vertex through a non-path child
    for q in path:
        for top in children.get(q, ()):
            if top in path:
                continue
            if _subtree(children, top) & out_neighbors:
                parent[top] = v
    parent[v] = z
    return parent


def build_vineyard(pattern: DirectedPattern) -> VineyardPattern:
    """Outbranching T with the vineyard property for a connected elder digraph."""
    if not pattern.is_connected():
        raise NotConnectedError(f"{pattern!r} is not weakly connected")
    if not pattern.is_elder():
        raise NotElderError(f"{pattern!r} has forks {pattern.forks()}")

    parent = _outbranching(pattern, frozenset(pattern.vertices))
    root = next(v for v, p in parent.items() if p is None)
    vineyard = VineyardPattern(pattern=pattern, parent=parent, root=root)
    if not vineyard.is_valid():
        raise PatternError(f"vineyard construction failed for {pattern!r}")
    return vineyard
