"""
Brute-force ground truth.

Exhaustive backtracking counts of homomorphisms (hom), injective
homomorphisms (sub) and induced embeddings (isub) of small colored patterns,
directed homomorphisms into augmented hosts, and from-scratch fork sets.
Nothing here uses the dynamic structures; only graph inputs are shared.

Patterns and hosts are anything exposing edges() as (u, v, color) triples
together with their vertices (ColoredGraph, Pattern, DirectedPattern); a
directed host may also be a (tail, head) -> color mapping.
"""

import itertools
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Set, Tuple

from structures.errors import OracleScaleError

MAX_PATTERN_VERTICES = 6
MAX_HOST_VERTICES = 40


def _vertices(graph) -> List[Hashable]:
    vertices = graph.vertices
    return list(vertices() if callable(vertices) else vertices)


def _check_scale(pattern_n: int, host_n: int, check_scale: bool) -> None:
    if not check_scale:
        return
    if pattern_n > MAX_PATTERN_VERTICES:
        raise OracleScaleError(f"pattern has {pattern_n} vertices; the oracle handles at most {MAX_PATTERN_VERTICES}")
    if host_n > MAX_HOST_VERTICES:
        raise OracleScaleError(f"host has {host_n} vertices; the oracle handles at most {MAX_HOST_VERTICES}")


def _search_order(vertices: List[Hashable], adjacency: Dict[Hashable, Set[Hashable]]) -> List[Hashable]:
    """Vertices ordered so each one follows a neighbor whenever its component allows."""
    order: List[Hashable] = []
    placed: Set[Hashable] = set()
    for start in vertices:
        if start in placed:
            continue
        stack = [start]
        while stack:
            v = stack.pop()
            if v in placed:
                continue
            placed.add(v)
            order.append(v)
            stack.extend(w for w in adjacency[v] if w not in placed)
    return order


# ==================== Undirected counts ====================

def _undirected_count(pattern, host, injective: bool, induced: bool, check_scale: bool) -> int:
    p_vertices = _vertices(pattern)
    h_vertices = _vertices(host)
    _check_scale(len(p_vertices), len(h_vertices), check_scale)

    p_color: Dict[frozenset, int] = {frozenset((u, v)): c for u, v, c in pattern.edges()}
    p_adj: Dict[Hashable, Set[Hashable]] = {v: set() for v in p_vertices}
    for u, v, _ in pattern.edges():
        p_adj[u].add(v)
        p_adj[v].add(u)
    h_color: Dict[frozenset, int] = {frozenset((u, v)): c for u, v, c in host.edges()}
    h_adj: Dict[Hashable, Set[Hashable]] = {v: set() for v in h_vertices}
    for u, v, _ in host.edges():
        h_adj[u].add(v)
        h_adj[v].add(u)

    order = _search_order(p_vertices, p_adj)
    earlier = {v: [w for w in order[: order.index(v)]] for v in order}
    phi: Dict[Hashable, Hashable] = {}
    used: Set[Hashable] = set()

    def fits(v: Hashable, image: Hashable) -> bool:
        if injective and image in used:
            return False
        for w in earlier[v]:
            pattern_c = p_color.get(frozenset((v, w)))
            host_c = h_color.get(frozenset((image, phi[w])))
            if pattern_c is not None and host_c != pattern_c:
                return False
            if induced and pattern_c is None and host_c is not None:
                return False
        return True

    def extend(i: int) -> int:
        if i == len(order):
            return 1
        v = order[i]
        anchors = [w for w in earlier[v] if w in p_adj[v]]
        candidates = h_adj[phi[anchors[0]]] if anchors else h_vertices
        total = 0
        for image in list(candidates):
            if not fits(v, image):
                continue
            phi[v] = image
            used.add(image)
            total += extend(i + 1)
            used.discard(image)
            del phi[v]
        return total

    return extend(0)


def hom_bf(pattern, host, check_scale: bool = True) -> int:
    return _undirected_count(pattern, host, injective=False, induced=False, check_scale=check_scale)


def sub_bf(pattern, host, check_scale: bool = True) -> int:
    return _undirected_count(pattern, host, injective=True, induced=False, check_scale=check_scale)


def isub_bf(pattern, host, check_scale: bool = True) -> int:
    return _undirected_count(pattern, host, injective=True, induced=True, check_scale=check_scale)


# ==================== Directed counts ====================

def _directed_edges(digraph) -> Dict[Tuple[Hashable, Hashable], int]:
    if isinstance(digraph, Mapping):
        return dict(digraph)
    return {(t, h): c for t, h, c in digraph.edges()}


def dihom_bf(
    pattern,
    host,
    fixed: Optional[Mapping[Hashable, Hashable]] = None,
    host_vertices: Optional[Iterable[Hashable]] = None,
    check_scale: bool = True,
) -> int:
    """
    Directed, color-preserving homomorphisms of `pattern` into `host`.
    `fixed` pins some pattern vertices to host vertices.
    """
    edges = _directed_edges(host)
    if host_vertices is None:
        if isinstance(host, Mapping):
            host_vertices = {x for pair in edges for x in pair}
        else:
            host_vertices = _vertices(host)
    h_vertices = sorted(set(host_vertices) | set((fixed or {}).values()))
    p_vertices = _vertices(pattern)
    _check_scale(len(p_vertices), len(h_vertices), check_scale)
    p_edges = [(t, h, c) for t, h, c in pattern.edges()]
    out: Dict[Hashable, Dict[Hashable, int]] = {}
    into: Dict[Hashable, Dict[Hashable, int]] = {}
    for (t, h), c in edges.items():
        out.setdefault(t, {})[h] = c
        into.setdefault(h, {})[t] = c

    p_adj: Dict[Hashable, Set[Hashable]] = {v: set() for v in p_vertices}
    for t, h, _ in p_edges:
        p_adj[t].add(h)
        p_adj[h].add(t)
    pinned = dict(fixed or {})
    order = [v for v in p_vertices if v in pinned] + [
        v for v in _search_order(p_vertices, p_adj) if v not in pinned
    ]
    position = {v: i for i, v in enumerate(order)}
    phi: Dict[Hashable, Hashable] = {}

    def fits(v: Hashable) -> bool:
        for t, h, c in p_edges:
            if v not in (t, h):
                continue
            other = h if t == v else t
            if position[other] > position[v]:
                continue
            if out.get(phi[t], {}).get(phi[h]) != c:
                return False
        return True

    def extend(i: int) -> int:
        if i == len(order):
            return 1
        v = order[i]
        if v in pinned:
            candidates: Iterable[Hashable] = [pinned[v]]
        else:
            candidates = h_vertices
            for w in p_adj[v]:
                if w in phi:
                    image = phi[w]
                    candidates = list(out.get(image, {})) + list(into.get(image, {}))
                    break
        total = 0
        for image in candidates:
            phi[v] = image
            if fits(v):
                total += extend(i + 1)
            del phi[v]
        return total

    return extend(0)


# ==================== Forks ====================

def forks_bf(digraph) -> Set[Tuple[Hashable, Hashable]]:
    """Pairs (sorted) of distinct non-adjacent vertices with a common out-neighbor."""
    edges = _directed_edges(digraph)
    vertices = sorted({x for pair in edges for x in pair})
    adjacent = {frozenset(pair) for pair in edges}
    found = set()
    for u, v in itertools.combinations(vertices, 2):
        if frozenset((u, v)) in adjacent:
            continue
        if any((u, w) in edges and (v, w) in edges for w in vertices):
            found.add((u, v))
    return found


def recompute_level_pairs(lower_union: Mapping[Tuple[int, int], int]) -> Set[Tuple[int, int]]:
    """The pair set a fork level must hold, recomputed from the union below it."""
    return forks_bf(lower_union)
