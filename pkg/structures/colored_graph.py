"""
Mutable edge-colored undirected host graph.

Vertices are dense non-negative integers. Removed ids go to a free-list and
are handed out again (smallest first) by add_vertex(). Edge colors are in
{1..k}; color 0 is reserved for augmentation edges.
"""

import heapq
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import (
    DuplicateEdgeError,
    DuplicateVertexError,
    InvalidColorError,
    LoopError,
    MissingEdgeError,
    UnknownVertexError,
    VertexNotIsolatedError,
)

Pair = Tuple[int, int]

# Largest jump an explicit id may make past the current id range.
MAX_ID_GAP = 1 << 20


def edge_key(u: int, v: int) -> Pair:
    """Unordered pair as a sorted tuple."""
    return (u, v) if u < v else (v, u)


class ColoredGraph:
    """
    Simple undirected graph with edges colored by {1..k}.

    The edge map and the per-vertex neighbor maps are kept in sync; every
    mutation validates fully before touching either.
    """

    def __init__(self, k: int, vertices: Iterable[int] = ()):
        if k < 1:
            raise ValueError(f"number of colors must be positive, got {k}")
        self._k = k
        self._adjacency: List[Optional[Dict[int, int]]] = []
        self._edges: Dict[Pair, int] = {}
        self._free: set = set()
        self._free_heap: List[int] = []
        self._vertex_count = 0
        for v in vertices:
            self.add_vertex(v)

    # ==================== Vertices ====================

    @property
    def k(self) -> int:
        return self._k

    def add_vertex(self, vertex_id: Optional[int] = None) -> int:
        """Add a vertex; with no id, recycle the smallest free id."""
        if vertex_id is None:
            vertex_id = self._pop_free()
        elif vertex_id < 0:
            raise UnknownVertexError(f"vertex ids are non-negative, got {vertex_id}")
        elif self.has_vertex(vertex_id):
            raise DuplicateVertexError(f"vertex {vertex_id} already present")
        elif vertex_id - len(self._adjacency) > MAX_ID_GAP:
            raise UnknownVertexError(
                f"vertex id {vertex_id} is more than {MAX_ID_GAP} past the largest id in use"
            )

        while len(self._adjacency) <= vertex_id:
            slot = len(self._adjacency)
            self._adjacency.append(None)
            if slot != vertex_id:
                self._push_free(slot)
        self._free.discard(vertex_id)
        self._adjacency[vertex_id] = {}
        self._vertex_count += 1
        return vertex_id

    def remove_vertex(self, v: int) -> None:
        """Remove an isolated vertex and recycle its id."""
        neighbors = self._require_vertex(v)
        if neighbors:
            raise VertexNotIsolatedError(f"vertex {v} still has {len(neighbors)} incident edges")
        self._adjacency[v] = None
        self._vertex_count -= 1
        self._push_free(v)

    def has_vertex(self, v: int) -> bool:
        return 0 <= v < len(self._adjacency) and self._adjacency[v] is not None

    def vertices(self) -> Iterator[int]:
        return (v for v, adj in enumerate(self._adjacency) if adj is not None)

    def num_vertices(self) -> int:
        return self._vertex_count

    def _push_free(self, v: int) -> None:
        self._free.add(v)
        heapq.heappush(self._free_heap, v)

    def _pop_free(self) -> int:
        while self._free_heap:
            v = heapq.heappop(self._free_heap)
            if v in self._free:
                return v
        return len(self._adjacency)

    def _require_vertex(self, v: int) -> Dict[int, int]:
        if not self.has_vertex(v):
            raise UnknownVertexError(f"unknown vertex {v}")
        return self._adjacency[v]

    # ==================== Edges ====================

    def _check_color(self, c: int) -> None:
        if c == 0:
            raise InvalidColorError("color 0 is reserved for augmentation edges")
        if not 1 <= c <= self._k:
            raise InvalidColorError(f"color {c} outside 1..{self._k}")

    def add_edge(self, u: int, v: int, c: int) -> None:
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        adj_u = self._require_vertex(u)
        adj_v = self._require_vertex(v)
        self._check_color(c)
        if v in adj_u:
            raise DuplicateEdgeError(f"duplicate edge {{{u},{v}}}")
        adj_u[v] = c
        adj_v[u] = c
        self._edges[edge_key(u, v)] = c

    def remove_edge(self, u: int, v: int) -> int:
        """Remove the edge and return its former color."""
        key = edge_key(u, v)
        if key not in self._edges:
            raise MissingEdgeError(f"no edge {{{u},{v}}}")
        c = self._edges.pop(key)
        del self._adjacency[u][v]
        del self._adjacency[v][u]
        return c

    def recolor_edge(self, u: int, v: int, c: int) -> int:
        """Change the color of an existing edge; returns the old color."""
        key = edge_key(u, v)
        if key not in self._edges:
            raise MissingEdgeError(f"no edge {{{u},{v}}}")
        self._check_color(c)
        old = self._edges[key]
        self._edges[key] = c
        self._adjacency[u][v] = c
        self._adjacency[v][u] = c
        return old

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edges

    def color(self, u: int, v: int) -> Optional[int]:
        return self._edges.get(edge_key(u, v))

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        """Edges as (u, v, color) with u < v."""
        return ((u, v, c) for (u, v), c in self._edges.items())

    def num_edges(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> Dict[int, int]:
        """Read-only view intent: neighbor -> color."""
        return self._require_vertex(v)

    def degree(self, v: int) -> int:
        return len(self._require_vertex(v))

    def max_degree(self) -> int:
        return max((len(adj) for adj in self._adjacency if adj is not None), default=0)

    # ==================== Misc ====================

    def copy(self) -> "ColoredGraph":
        other = ColoredGraph(self._k)
        other._adjacency = [dict(adj) if adj is not None else None for adj in self._adjacency]
        other._edges = dict(self._edges)
        other._free = set(self._free)
        other._free_heap = list(self._free_heap)
        other._vertex_count = self._vertex_count
        return other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (
            self._k == other._k
            and set(self.vertices()) == set(other.vertices())
            and self._edges == other._edges
        )

    def __repr__(self) -> str:
        return f"<ColoredGraph(k={self._k}, vertices={self._vertex_count}, edges={len(self._edges)})>"


def peeling_order(adjacency: Mapping[int, Iterable[int]]) -> Tuple[List[int], int]:
    """
    Min-degree peeling with a bucket queue, O(|V| + |E|).

    Returns the removal order and the degeneracy (the largest degree a
    vertex had at the moment it was removed).
    """
    degrees = {v: len(list(ns)) for v, ns in adjacency.items()}
    if not degrees:
        return [], 0
    buckets: List[set] = [set() for _ in range(max(degrees.values()) + 1)]
    for v, d in degrees.items():
        buckets[d].add(v)

    order: List[int] = []
    removed = set()
    best = 0
    current = 0
    for _ in range(len(degrees)):
        current = max(current - 1, 0)
        while not buckets[current]:
            current += 1
        v = buckets[current].pop()
        best = max(best, current)
        removed.add(v)
        order.append(v)
        for w in adjacency[v]:
            if w in removed:
                continue
            d = degrees[w]
            buckets[d].discard(w)
            degrees[w] = d - 1
            buckets[d - 1].add(w)
    return order, best


def degeneracy(g: ColoredGraph) -> int:
    """Degeneracy of the host graph (max over subgraphs of the min degree)."""
    _, d = peeling_order({v: g.neighbors(v) for v in g.vertices()})
    return d
