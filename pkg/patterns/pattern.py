"""
Small query patterns.

Pattern is an undirected graph with edge colors in {1..k}. DirectedPattern
is a colored digraph (colors {0..k}, 0 marking augmentation edges) without
loops or anti-parallel pairs. Both are immutable, compare by labeled
equality, and expose canonical_form() as an isomorphism-invariant key.

Vertices are ints, or frozensets of ints when a pattern is a quotient
(projection, 0-contraction) whose vertices are parts of another pattern.
"""

import itertools
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from structures.colored_graph import ColoredGraph
from structures.errors import PatternError, PatternGuardError

Vertex = Hashable
Edge = Tuple[Vertex, Vertex, int]
CanonicalForm = Tuple[int, Tuple[Tuple[int, int, int], ...]]


def vertex_order(v: Vertex) -> Tuple[int, ...]:
    """Sort key shared by plain and part-valued vertices."""
    if isinstance(v, frozenset):
        return tuple(sorted(v))
    return (v,)


def _sorted_pair(u: Vertex, v: Vertex) -> Tuple[Vertex, Vertex]:
    return (u, v) if vertex_order(u) <= vertex_order(v) else (v, u)


def _canonical(
    vertices: Sequence[Vertex], edges: Iterable[Edge], directed: bool
) -> Tuple[CanonicalForm, Dict[Vertex, int]]:
    """Lexicographically smallest relabeled edge list over all permutations."""
    edges = list(edges)
    n = len(vertices)
    best: Optional[Tuple[Tuple[int, int, int], ...]] = None
    best_map: Dict[Vertex, int] = {}
    for perm in itertools.permutations(range(n)):
        mapping = dict(zip(vertices, perm))
        if directed:
            image = tuple(sorted((mapping[t], mapping[h], c) for t, h, c in edges))
        else:
            image = tuple(
                sorted((min(mapping[u], mapping[v]), max(mapping[u], mapping[v]), c) for u, v, c in edges)
            )
        if best is None or image < best:
            best, best_map = image, mapping
    return (n, best or ()), best_map


def check_pattern_size(n: int, max_size: int) -> None:
    if n > max_size:
        raise PatternGuardError(f"pattern has {n} vertices; the size guard allows at most {max_size}")


# ==================== Undirected patterns ====================

class Pattern:
    """Undirected colored query pattern."""

    __slots__ = ("_vertices", "_edges", "_adj", "_hash")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge] = ()):
        self._vertices: Tuple[Vertex, ...] = tuple(sorted(set(vertices), key=vertex_order))
        vertex_set = set(self._vertices)
        self._edges: Dict[Tuple[Vertex, Vertex], int] = {}
        self._adj: Dict[Vertex, Dict[Vertex, int]] = {v: {} for v in self._vertices}
        for u, v, c in edges:
            if u == v:
                raise PatternError(f"loop at pattern vertex {u}")
            if u not in vertex_set or v not in vertex_set:
                raise PatternError(f"edge {{{u},{v}}} uses an undeclared vertex")
            if c < 1:
                raise PatternError(f"pattern edge {{{u},{v}}} has color {c}; colors start at 1")
            key = _sorted_pair(u, v)
            if key in self._edges:
                raise PatternError(f"duplicate pattern edge {{{u},{v}}}")
            self._edges[key] = c
            self._adj[u][v] = c
            self._adj[v][u] = c
        self._hash = hash((self._vertices, frozenset(self._edges.items())))

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def edges(self) -> List[Edge]:
        return [(u, v, c) for (u, v), c in sorted(self._edges.items(), key=lambda item: (vertex_order(item[0][0]), vertex_order(item[0][1])))]

    def num_edges(self) -> int:
        return len(self._edges)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, {})

    def color(self, u: Vertex, v: Vertex) -> Optional[int]:
        return self._adj.get(u, {}).get(v)

    def neighbors(self, v: Vertex) -> Dict[Vertex, int]:
        return dict(self._adj[v])

    def max_color(self) -> int:
        return max(self._edges.values(), default=0)

    def non_edges(self) -> List[Tuple[Vertex, Vertex]]:
        return [
            (u, v)
            for u, v in itertools.combinations(self._vertices, 2)
            if not self.has_edge(u, v)
        ]

    # ==================== Derived patterns ====================

    def with_edges(self, extra: Iterable[Edge]) -> "Pattern":
        return Pattern(self._vertices, list(self.edges()) + list(extra))

    def induced(self, vertices: Iterable[Vertex]) -> "Pattern":
        keep = set(vertices)
        return Pattern(keep, [(u, v, c) for u, v, c in self.edges() if u in keep and v in keep])

    def relabeled(self) -> "Pattern":
        """Copy on 0..n-1, following the vertex order."""
        index = {v: i for i, v in enumerate(self._vertices)}
        return Pattern(range(self.n), [(index[u], index[v], c) for u, v, c in self.edges()])

    def quotient(self, partition: Iterable[FrozenSet[Vertex]]) -> "Pattern":
        """
        Merge each part into one vertex. Parts must be independent and edges
        between two parts must agree on color.
        """
        parts = [frozenset(p) for p in partition]
        owner = {v: part for part in parts for v in part}
        merged: Dict[Tuple[Vertex, Vertex], int] = {}
        for u, v, c in self.edges():
            a, b = owner[u], owner[v]
            if a == b:
                raise PatternError(f"part {sorted(a)} is not independent")
            key = _sorted_pair(a, b)
            if merged.setdefault(key, c) != c:
                raise PatternError(f"parts {sorted(a)} and {sorted(b)} joined by differently colored edges")
        return Pattern(parts, [(a, b, c) for (a, b), c in merged.items()])

    def components(self) -> List["Pattern"]:
        return [
            self.induced(component)
            for component in sorted(
                nx.connected_components(self.to_networkx()),
                key=lambda comp: min(vertex_order(v) for v in comp),
            )
        ]

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.to_networkx())

    def canonical_form(self) -> CanonicalForm:
        form, _ = _canonical(self._vertices, self.edges(), directed=False)
        return form

    def canonical_representative(self) -> "Pattern":
        form, _ = _canonical(self._vertices, self.edges(), directed=False)
        n, edges = form
        return Pattern(range(n), edges)

    # ==================== Conversion ====================

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from((u, v, {"color": c}) for u, v, c in self.edges())
        return graph

    @classmethod
    def from_colored_graph(cls, g: ColoredGraph) -> "Pattern":
        return cls(g.vertices(), g.edges())

    def to_colored_graph(self, k: int) -> ColoredGraph:
        relabeled = self.relabeled()
        g = ColoredGraph(k, range(relabeled.n))
        for u, v, c in relabeled.edges():
            g.add_edge(u, v, c)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<Pattern(n={self.n}, edges={self.edges()})>"


# ==================== Directed patterns ====================

class DirectedPattern:
    """Colored digraph pattern; color 0 marks augmentation edges."""

    __slots__ = ("_vertices", "_edges", "_out", "_in", "_hash")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge] = ()):
        self._vertices: Tuple[Vertex, ...] = tuple(sorted(set(vertices), key=vertex_order))
        self._edges: Dict[Tuple[Vertex, Vertex], int] = {}
        self._out: Dict[Vertex, Dict[Vertex, int]] = {v: {} for v in self._vertices}
        self._in: Dict[Vertex, Dict[Vertex, int]] = {v: {} for v in self._vertices}
        for t, h, c in edges:
            if t == h:
                raise PatternError(f"loop at pattern vertex {t}")
            if t not in self._out or h not in self._out:
                raise PatternError(f"edge ({t},{h}) uses an undeclared vertex")
            if c < 0:
                raise PatternError(f"negative color on edge ({t},{h})")
            if (t, h) in self._edges or (h, t) in self._edges:
                raise PatternError(f"pair {{{t},{h}}} already has an edge")
            self._edges[(t, h)] = c
            self._out[t][h] = c
            self._in[h][t] = c
        self._hash = hash((self._vertices, frozenset(self._edges.items())))

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def edges(self) -> List[Edge]:
        return [
            (t, h, c)
            for (t, h), c in sorted(
                self._edges.items(), key=lambda item: (vertex_order(item[0][0]), vertex_order(item[0][1]))
            )
        ]

    def edge_map(self) -> Dict[Tuple[Vertex, Vertex], int]:
        return dict(self._edges)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_edge(self, t: Vertex, h: Vertex) -> bool:
        return (t, h) in self._edges

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self._edges or (v, u) in self._edges

    def color(self, t: Vertex, h: Vertex) -> Optional[int]:
        return self._edges.get((t, h))

    def out_neighbors(self, v: Vertex) -> Dict[Vertex, int]:
        return self._out[v]

    def in_neighbors(self, v: Vertex) -> Dict[Vertex, int]:
        return self._in[v]

    def forks(self) -> List[Tuple[Vertex, Vertex]]:
        """Distinct non-adjacent pairs with a common out-neighbor."""
        found = set()
        for w in self._vertices:
            for u, v in itertools.combinations(self._in[w], 2):
                if not self.adjacent(u, v):
                    found.add(_sorted_pair(u, v))
        return sorted(found, key=lambda pair: (vertex_order(pair[0]), vertex_order(pair[1])))

    def is_elder(self) -> bool:
        return not self.forks()

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_weakly_connected(self.to_networkx())

    def with_edges(self, extra: Iterable[Edge]) -> "DirectedPattern":
        return DirectedPattern(self._vertices, list(self.edges()) + list(extra))

    def induced(self, vertices: Iterable[Vertex]) -> "DirectedPattern":
        keep = set(vertices)
        return DirectedPattern(keep, [(t, h, c) for t, h, c in self.edges() if t in keep and h in keep])

    def canonical_form(self) -> CanonicalForm:
        form, _ = _canonical(self._vertices, self.edges(), directed=True)
        return form

    def canonical_representative(self) -> "DirectedPattern":
        """Isomorphic copy on 0..n-1 whose edge list is the canonical form."""
        (n, edges), _ = _canonical(self._vertices, self.edges(), directed=True)
        return DirectedPattern(range(n), edges)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from((t, h, {"color": c}) for t, h, c in self.edges())
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedPattern):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<DirectedPattern(n={self.n}, edges={self.edges()})>"
