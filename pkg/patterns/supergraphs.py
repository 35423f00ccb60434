"""Signed supergraph expansion turning induced counts into subgraph counts."""

import itertools
from typing import List, Tuple

from .pattern import Pattern, check_pattern_size


def enumerate_supergraphs(pattern: Pattern, k: int, max_size: int = 5) -> List[Tuple[int, Pattern]]:
    """
    Every pattern obtained by adding a subset of the non-edges, each with a
    color from 1..k, signed (-1)^(number of added edges).

    isub(H, G) = sum(sign * sub(H', G)) over the returned list. The first
    entry is always (+1, H).
    """
    check_pattern_size(pattern.n, max_size)
    if k < 1:
        raise ValueError(f"number of colors must be positive, got {k}")
    non_edges = pattern.non_edges()
    result: List[Tuple[int, Pattern]] = []
    for choice in itertools.product([None, *range(1, k + 1)], repeat=len(non_edges)):
        added = [(u, v, c) for (u, v), c in zip(non_edges, choice) if c is not None]
        sign = -1 if len(added) % 2 else 1
        result.append((sign, pattern.with_edges(added) if added else pattern))
    return result
