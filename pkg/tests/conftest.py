"""
Pytest fixtures for the counting index test suite
"""
import random
import sys
from pathlib import Path

import networkx as nx
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from patterns.pattern import Pattern
from structures.colored_graph import ColoredGraph


def make_graph(k, n, edges):
    """ColoredGraph on 0..n-1 from (u, v, color) triples."""
    graph = ColoredGraph(k, range(n))
    for u, v, c in edges:
        graph.add_edge(u, v, c)
    return graph


def random_graph(n, m, k, seed):
    """G(n, m) host with colors drawn from 1..k."""
    rng = random.Random(seed)
    nx_graph = nx.gnm_random_graph(n, m, seed=seed)
    return make_graph(k, n, [(u, v, rng.randint(1, k)) for u, v in nx_graph.edges()])


PATTERNS = {
    "single": Pattern([0]),
    "pair": Pattern([0, 1]),
    "k2": Pattern([0, 1], [(0, 1, 1)]),
    "p3": Pattern([0, 1, 2], [(0, 1, 1), (1, 2, 1)]),
    "tri": Pattern([0, 1, 2], [(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
    "p4": Pattern([0, 1, 2, 3], [(0, 1, 1), (1, 2, 1), (2, 3, 1)]),
    "c4": Pattern([0, 1, 2, 3], [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]),
    "paw": Pattern([0, 1, 2, 3], [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)]),
    "diamond": Pattern([0, 1, 2, 3], [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1)]),
}


@pytest.fixture
def patterns():
    """Named query patterns (all color 1)."""
    return dict(PATTERNS)


@pytest.fixture
def triangle_graph():
    """K3 on vertices 0, 1, 2 with color 1."""
    return make_graph(1, 3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def path_graph():
    """Path 0-1-2 with color 1."""
    return make_graph(1, 3, [(0, 1, 1), (1, 2, 1)])


@pytest.fixture
def bipartite_graph():
    """K_{2,3}: every orientation has a vertex of in-degree 2, hence a fork."""
    return make_graph(1, 5, [(a, x, 1) for a in (0, 1) for x in (2, 3, 4)])


@pytest.fixture
def graph_text():
    """Triangle in the graph file format."""
    return "graph 1\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\ne 0 2 1\n"


@pytest.fixture
def patterns_text():
    """Triangle and path patterns in the patterns file format."""
    return (
        "pattern tri\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\ne 0 2 1\n"
        "pattern p3\nv 0\nv 1\nv 2\ne 0 1 1\ne 1 2 1\n"
    )
