"""
Projections of a pattern and their coefficients.

A projection merges the vertices of each part of a partition. A partition is
valid when every part is independent and all edges between two parts share
one color; the valid partitions are exactly the kernels of homomorphisms, so

    hom(H, G) = sum over valid P of sub(H / P, G)

and inverting this over the refinement order gives integer coefficients with
sub(H, G) = sum over valid P of alpha(P) * hom(H / P, G).
"""

from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .pattern import Pattern, Vertex, vertex_order

Partition = Tuple[FrozenSet[Vertex], ...]


def set_partitions(items: Sequence[Vertex]) -> Iterator[List[List[Vertex]]]:
    """All partitions of items, each as a list of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        yield [[first], *partial]
        for i in range(len(partial)):
            yield partial[:i] + [[first, *partial[i]]] + partial[i + 1:]


def is_valid_partition(pattern: Pattern, blocks: Sequence[Sequence[Vertex]]) -> bool:
    owner = {v: i for i, block in enumerate(blocks) for v in block}
    colors: Dict[Tuple[int, int], int] = {}
    for u, v, c in pattern.edges():
        a, b = owner[u], owner[v]
        if a == b:
            return False
        key = (a, b) if a < b else (b, a)
        if colors.setdefault(key, c) != c:
            return False
    return True


def _part_key(part: FrozenSet[Vertex]) -> List[Tuple[int, ...]]:
    return sorted(vertex_order(v) for v in part)


def valid_partitions(pattern: Pattern) -> List[Partition]:
    """Valid partitions, finest (all singletons) first."""
    found = [
        tuple(sorted((frozenset(block) for block in blocks), key=_part_key))
        for blocks in set_partitions(list(pattern.vertices))
        if is_valid_partition(pattern, blocks)
    ]
    return sorted(found, key=lambda p: (-len(p), [_part_key(part) for part in p]))


def _refines(finer: Partition, coarser: Partition) -> bool:
    return all(any(part <= block for block in coarser) for part in finer)


def partition_coefficients(partitions: List[Partition]) -> Dict[Partition, int]:
    """
    alpha(finest) = 1 and alpha(Q) = -sum(alpha(R)) over valid R strictly
    finer than Q. Expects partitions ordered finest first.
    """
    alpha: Dict[Partition, int] = {}
    for i, q in enumerate(partitions):
        if i == 0:
            alpha[q] = 1
            continue
        alpha[q] = -sum(alpha[r] for r in partitions[:i] if len(r) > len(q) and _refines(r, q))
    return alpha


def enumerate_projections_with_alpha(pattern: Pattern) -> List[Tuple[Pattern, int]]:
    """
    (projection, alpha) for every valid partition; the projection is
    relabeled to 0..m-1 and the unprojected pattern comes first with alpha 1.
    """
    partitions = valid_partitions(pattern)
    alpha = partition_coefficients(partitions)
    return [(pattern.quotient(p).relabeled(), alpha[p]) for p in partitions]
