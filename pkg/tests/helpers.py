"""
Graph and square builders shared by the test modules
"""

import random
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from hypothesis import strategies as st

from greedy_core import OrderedGraph
from latin_squares import LatinSquare


def path_graph(n: int, order: Optional[Sequence[int]] = None) -> OrderedGraph:
    return OrderedGraph(n, [(i, i + 1) for i in range(1, n)], order)


def cycle_graph(n: int, order: Optional[Sequence[int]] = None) -> OrderedGraph:
    return OrderedGraph(n, [(i, i % n + 1) for i in range(1, n + 1)], order)


def complete_graph(n: int, order: Optional[Sequence[int]] = None) -> OrderedGraph:
    return OrderedGraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], order)


def leaves_first_star(leaves: int = 3, offset: int = 0) -> List[Tuple[int, int]]:
    """Edges of a star whose center is the last of its vertices"""
    center = offset + leaves + 1
    return [(offset + i, center) for i in range(1, leaves + 1)]


def random_graph(rng: random.Random, n: int, p: float) -> OrderedGraph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return OrderedGraph(n, edges, order)


def random_tree(rng: random.Random, n: int, shuffle_order: bool = True) -> OrderedGraph:
    """Each vertex after the first hangs off a random earlier one"""
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    order = list(range(1, n + 1))
    if shuffle_order:
        rng.shuffle(order)
    return OrderedGraph(n, edges, order)


def random_connected_bipartite(rng: random.Random, n: int, p: float) -> Tuple[OrderedGraph, Dict[int, int]]:
    """A random tree plus random edges across its two sides; returns the graph and its 2-coloring"""
    tree = random_tree(rng, n)
    coloring = {1: 1}
    for u, v in sorted(tree.edges, key=lambda e: e[1]):
        coloring[v] = 3 - coloring[u]
    edges = set(tree.edges)
    edges.update((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                 if coloring[u] != coloring[v] and rng.random() < p)
    return OrderedGraph(n, edges, tree.order), coloring


def random_nx_graph(rng: random.Random, n: int, p: float, connected: bool = False) -> nx.Graph:
    while True:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, n + 1))
        graph.add_edges_from((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p)
        if not connected or (graph.number_of_edges() > 0 and nx.is_connected(graph)):
            return graph


def brute_force_min_cover(F: nx.Graph) -> int:
    from itertools import combinations
    vertices = sorted(F.nodes)
    for k in range(len(vertices) + 1):
        for subset in combinations(vertices, k):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in F.edges):
                return k
    return len(vertices)


CYCLIC_3 = LatinSquare([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
BACK_CYCLIC_3 = LatinSquare([[1, 2, 3], [3, 1, 2], [2, 3, 1]])
ORDER_2 = LatinSquare([[1, 2], [2, 1]])
XOR_4 = LatinSquare([[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]])


@st.composite
def ordered_graphs(draw, min_vertices: int = 1, max_vertices: int = 7) -> OrderedGraph:
    """Hypothesis strategy: a simple graph on 1..n with a random order"""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges = [pair for pair in pairs if draw(st.booleans())]
    order = draw(st.permutations(list(range(1, n + 1))))
    return OrderedGraph(n, edges, order)
