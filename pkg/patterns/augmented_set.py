"""
The augmented pattern set of a connected pattern F.

Every homomorphism of F into the host graph pulls the host's augmentation
back onto F. Enumerating all such pullbacks up front gives a finite set of
elder colored digraphs whose directed homomorphism counts into the
augmented host sum to hom(F, G):

1. every orientation of F;
2. h rounds of fraternal augmentation, branching over every orientation
   of every fork set (new edges get color 0);
3. every recoloring of the 0-edges into {0..k} (the pair may be a host
   edge in the host);
4. every 0-contraction (vertices sharing an image merge into one part).

Members are deduplicated by labeled equality and only then grouped by
isomorphism class.
"""

import itertools
import logging
from collections import Counter
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx

from structures.errors import BlowupGuardError, NotConnectedError, NotElderError

from .pattern import CanonicalForm, DirectedPattern, Pattern, Vertex, check_pattern_size
from .projections import set_partitions

logger = logging.getLogger("isub.compiler")

ZERO = 0


def augmentation_depth(n: int) -> int:
    """Rounds of fraternal augmentation needed for an n-vertex pattern (clamped at 0)."""
    return max(0, n * (n - 1) // 2 - 2)


def _check_blowup(count: int, member_cap: int, stage: str) -> None:
    if count > member_cap:
        raise BlowupGuardError(f"{stage}: {count} candidates exceed the member cap {member_cap}")


def orientations(pattern: Pattern) -> List[DirectedPattern]:
    edges = pattern.edges()
    result = []
    for flips in itertools.product((False, True), repeat=len(edges)):
        directed = [(v, u, c) if flip else (u, v, c) for (u, v, c), flip in zip(edges, flips)]
        result.append(DirectedPattern(pattern.vertices, directed))
    return result


def fraternal_round(digraph: DirectedPattern) -> List[DirectedPattern]:
    """All ways to orient the current fork set; an elder digraph maps to itself."""
    forks = digraph.forks()
    if not forks:
        return [digraph]
    result = []
    for flips in itertools.product((False, True), repeat=len(forks)):
        added = [(v, u, ZERO) if flip else (u, v, ZERO) for (u, v), flip in zip(forks, flips)]
        result.append(digraph.with_edges(added))
    return result


def augmented_digraphs(pattern: Pattern, h: int, member_cap: int) -> List[DirectedPattern]:
    """Labeled h-th augmentations of every orientation, deduplicated each round."""
    frontier = list(dict.fromkeys(orientations(pattern)))
    for round_index in range(h):
        if all(d.is_elder() for d in frontier):
            break
        next_frontier: Dict[DirectedPattern, None] = {}
        for digraph in frontier:
            for successor in fraternal_round(digraph):
                next_frontier[successor] = None
            _check_blowup(len(next_frontier), member_cap, f"augmentation round {round_index + 1}")
        frontier = list(next_frontier)
    return frontier


def recolorings(digraph: DirectedPattern, k: int) -> Iterator[DirectedPattern]:
    """Every assignment of colors {0..k} to the 0-edges."""
    fixed = [(t, h, c) for t, h, c in digraph.edges() if c != ZERO]
    zeros = [(t, h) for t, h, c in digraph.edges() if c == ZERO]
    if not zeros:
        yield digraph
        return
    for colors in itertools.product(range(k + 1), repeat=len(zeros)):
        yield DirectedPattern(digraph.vertices, fixed + [(t, h, c) for (t, h), c in zip(zeros, colors)])


def _contract(digraph: DirectedPattern, blocks: Sequence[Sequence[Vertex]]):
    """Quotient by blocks if it is a valid 0-contraction, else None."""
    owner = {v: i for i, block in enumerate(blocks) for v in block}
    internal: Dict[int, List[Tuple[Vertex, Vertex]]] = {}
    cross: Dict[Tuple[int, int], int] = {}
    for t, h, c in digraph.edges():
        a, b = owner[t], owner[h]
        if a == b:
            if c != ZERO:
                return None
            internal.setdefault(a, []).append((t, h))
            continue
        if (b, a) in cross:
            return None
        if cross.setdefault((a, b), c) != c:
            return None

    for i, block in enumerate(blocks):
        if len(block) == 1:
            continue
        graph = nx.Graph()
        graph.add_nodes_from(block)
        graph.add_edges_from(internal.get(i, ()))
        if not nx.is_connected(graph):
            return None

    parts = [frozenset(block) for block in blocks]
    return DirectedPattern(parts, [(parts[a], parts[b], c) for (a, b), c in cross.items()])


def zero_contractions(digraph: DirectedPattern) -> List[DirectedPattern]:
    """All valid 0-contractions; the trivial one (singleton parts) is included."""
    result = []
    for blocks in set_partitions(list(digraph.vertices)):
        contracted = _contract(digraph, blocks)
        if contracted is not None:
            result.append(contracted)
    return result


def enumerate_augmented_members(
    pattern: Pattern, k: int, max_size: int = 5, member_cap: int = 1_000_000
) -> List[DirectedPattern]:
    """Labeled members (vertices are parts of V(F)), deduplicated."""
    check_pattern_size(pattern.n, max_size)
    if not pattern.is_connected():
        raise NotConnectedError("augmented sets are defined for connected patterns only")

    h = augmentation_depth(pattern.n)
    members: Dict[DirectedPattern, None] = {}
    recolored_seen = 0
    for digraph in augmented_digraphs(pattern, h, member_cap):
        for recolored in recolorings(digraph, k):
            recolored_seen += 1
            _check_blowup(recolored_seen, member_cap, "zero recoloring")
            for member in zero_contractions(recolored):
                members[member] = None
        _check_blowup(len(members), member_cap, "augmented set")

    for member in members:
        if not member.is_connected():
            raise NotConnectedError(f"augmented member {member!r} is not connected")
        if not member.is_elder():
            raise NotElderError(f"augmented member {member!r} has forks {member.forks()}")
    return list(members)


def enumerate_augmented_set(
    pattern: Pattern, k: int, max_size: int = 5, member_cap: int = 1_000_000
) -> List[Tuple[DirectedPattern, int]]:
    """
    Members grouped by isomorphism class: (canonical representative on
    0..n-1, number of labeled members in the class), sorted by canonical form.
    """
    members = enumerate_augmented_members(pattern, k, max_size, member_cap)
    classes: Counter = Counter()
    for member in members:
        classes[member.canonical_form()] += 1
    grouped = [(_from_form(form), count) for form, count in sorted(classes.items())]
    logger.info(
        "augmented set: n=%d h=%d labeled=%d classes=%d",
        pattern.n, augmentation_depth(pattern.n), len(members), len(grouped),
    )
    return grouped


def _from_form(form: CanonicalForm) -> DirectedPattern:
    n, edges = form
    return DirectedPattern(range(n), edges)

