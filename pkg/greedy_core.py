"""
Greedy Coloring Core
Ordered graphs, the first-fit coloring engine with pre-colored defining sets,
descent enumeration and greedy defining set verification
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple
from dataclasses import dataclass

import networkx as nx

from gds_errors import InputError
from solver_config import get_solver_config

logger = logging.getLogger(__name__)

# vertex -> color; colors are positive integers
PartialColoring = Dict[int, int]
ProperColoring = Dict[int, int]


class OrderedGraph:
    """
    Simple graph on vertices 1..n with a processing order sigma

    `order` lists the vertices in processing order; `position[v]` is the
    1-based place of v in that order.
    """

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]], order: Optional[Iterable[int]] = None):
        """
        Initialize an ordered graph

        Args:
            n: Number of vertices (vertices are 1..n)
            edges: Unordered vertex pairs
            order: Vertices in processing order (identity when omitted)
        """
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.order: Tuple[int, ...] = tuple(order) if order is not None else tuple(range(1, n + 1))
        if sorted(self.order) != list(range(1, n + 1)):
            raise InputError(f"order must be a permutation of 1..{n}")
        self.position: Dict[int, int] = {v: i + 1 for i, v in enumerate(self.order)}

        self.adjacency: Dict[int, Set[int]] = {v: set() for v in range(1, n + 1)}
        edge_set: Set[Tuple[int, int]] = set()
        for u, v in edges:
            if u not in self.adjacency or v not in self.adjacency:
                raise InputError(f"edge ({u}, {v}) references a vertex outside 1..{n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in edge_set:
                raise InputError(f"duplicate edge {key}")
            edge_set.add(key)
            self.adjacency[u].add(v)
            self.adjacency[v].add(u)
        self.edges: FrozenSet[Tuple[int, int]] = frozenset(edge_set)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> Set[int]:
        return self.adjacency[v]

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        """Convert to an undirected networkx graph (order is not carried)"""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.order == other.order

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.order))

    def __repr__(self) -> str:
        return f"OrderedGraph(n={self.n}, m={len(self.edges)}, order={list(self.order)})"


@dataclass(frozen=True)
class Descent:
    """A vertex of color high_color together with all its low_color neighbors, all later in the order"""
    head: int
    tail: FrozenSet[int]
    low_color: int
    high_color: int

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.tail | {self.head}


@dataclass
class GreedyOutcome:
    """Result of one first-fit run"""
    coloring: Dict[int, int]
    max_color: int
    proper: bool

    def as_list(self) -> List[int]:
        """Colors of vertices 1..n in vertex order"""
        return [self.coloring[v] for v in sorted(self.coloring)]


def _check_partial(G: OrderedGraph, S: PartialColoring):
    for v, c in S.items():
        if v not in G.adjacency:
            raise InputError(f"pre-colored vertex {v} is not a vertex of the graph")
        if not isinstance(c, int) or c < 1:
            raise InputError(f"vertex {v} has invalid color {c!r}; colors are positive integers")


def is_proper(G: OrderedGraph, coloring: Dict[int, int]) -> bool:
    """True iff coloring is total on G and no edge is monochromatic"""
    if set(coloring) != set(G.vertices):
        return False
    if any(c < 1 for c in coloring.values()):
        return False
    return all(coloring[u] != coloring[v] for u, v in G.edges)


def check_proper(G: OrderedGraph, coloring: Dict[int, int]):
    """Raise InputError unless coloring is a total proper coloring of G"""
    missing = set(G.vertices) - set(coloring)
    if missing:
        raise InputError(f"coloring misses vertices {sorted(missing)[:5]}")
    extra = set(coloring) - set(G.vertices)
    if extra:
        raise InputError(f"coloring names unknown vertices {sorted(extra)[:5]}")
    for v, c in coloring.items():
        if c < 1:
            raise InputError(f"vertex {v} has invalid color {c}")
    for u, v in G.sorted_edges():
        if coloring[u] == coloring[v]:
            raise InputError(f"coloring is improper: edge ({u}, {v}) has color {coloring[u]} twice")


def greedy_color(G: OrderedGraph, S: Optional[PartialColoring] = None) -> GreedyOutcome:
    """
    Run first-fit coloring over G's order, keeping the pre-colored vertices of S fixed

    Every colored neighbor blocks its color, including pre-colored vertices that
    occur later in the order.

    Args:
        G: Ordered graph
        S: Pre-coloring (the candidate defining set); may be empty

    Returns:
        GreedyOutcome; `proper` is False only when S itself has a monochromatic edge
    """
    S = S or {}
    _check_partial(G, S)

    coloring: Dict[int, int] = dict(S)
    for v in G.order:
        if v in coloring:
            continue
        used = {coloring[u] for u in G.adjacency[v] if u in coloring}
        color = 1
        while color in used:
            color += 1
        coloring[v] = color

    proper = all(coloring[u] != coloring[v] for u, v in G.edges)
    max_color = max(coloring.values(), default=0)
    return GreedyOutcome(coloring=coloring, max_color=max_color, proper=proper)


def _coloring_order(G: OrderedGraph) -> List[int]:
    """Vertex order for backtracking: each next vertex has the most already-placed neighbors"""
    remaining = set(G.vertices)
    placed: Set[int] = set()
    result: List[int] = []
    while remaining:
        v = max(sorted(remaining), key=lambda x: (len(G.adjacency[x] & placed), len(G.adjacency[x])))
        result.append(v)
        placed.add(v)
        remaining.discard(v)
    return result


def _colorable(G: OrderedGraph, vertices: List[int], k: int) -> bool:
    colors: Dict[int, int] = {}

    def backtrack(i: int, highest: int) -> bool:
        if i == len(vertices):
            return True
        v = vertices[i]
        forbidden = {colors[u] for u in G.adjacency[v] if u in colors}
        # a fresh color is only ever tried as highest + 1 (color symmetry)
        for c in range(1, min(highest + 1, k) + 1):
            if c in forbidden:
                continue
            colors[v] = c
            if backtrack(i + 1, max(highest, c)):
                return True
            del colors[v]
        return False

    return backtrack(0, 0)


def chromatic_number(G: OrderedGraph) -> int:
    """
    Exact chromatic number

    Edgeless and bipartite graphs are answered directly; everything else goes
    through clique-bounded backtracking, guarded by GDS_CHROMATIC_MAX_VERTICES.
    """
    if G.n == 0:
        return 0
    if not G.edges:
        return 1
    graph = G.to_networkx()
    if nx.is_bipartite(graph):
        return 2

    get_solver_config().check('GDS_CHROMATIC_MAX_VERTICES', G.n)

    lower = max(len(clique) for clique in nx.find_cliques(graph))
    upper = greedy_color(G).max_color
    vertices = _coloring_order(G)
    for k in range(lower, upper):
        if _colorable(G, vertices, k):
            logger.debug(f"chromatic number {k} (clique bound {lower}, first-fit {upper})")
            return k
    return upper


def scan_descents(G: OrderedGraph, coloring: Dict[int, int], heads: Optional[Iterable[int]] = None) -> List[Descent]:
    """
    Descents of (G, order, coloring) without validating the coloring

    Args:
        G: Ordered graph
        coloring: Proper coloring covering at least the heads and their neighbors
        heads: Restrict to these head vertices (all vertices when omitted)

    Returns:
        Descents sorted by head position, then low color
    """
    candidates = G.order if heads is None else sorted(heads, key=G.position.__getitem__)
    descents: List[Descent] = []
    for v in candidates:
        high = coloring[v]
        if high == 1:
            continue
        by_color: Dict[int, List[int]] = {}
        for u in G.adjacency[v]:
            by_color.setdefault(coloring[u], []).append(u)
        pos = G.position[v]
        for low in range(1, high):
            tail = by_color.get(low, [])
            if all(G.position[u] > pos for u in tail):
                descents.append(Descent(head=v, tail=frozenset(tail), low_color=low, high_color=high))
    return descents


def find_descents(G: OrderedGraph, C: ProperColoring) -> List[Descent]:
    """
    All descents of the ordered graph under a proper coloring

    A vertex v of color j and a color i < j form a descent when every
    neighbor of v colored i comes after v (vacuously true when there is none).

    Args:
        G: Ordered graph
        C: Proper coloring of G

    Returns:
        Deduplicated descents ordered by head position, then low color
    """
    check_proper(G, C)
    descents = scan_descents(G, C)
    logger.debug(f"{len(descents)} descents on {G!r}")
    return descents


def is_transversal(Sv: Iterable[int], D: Iterable[Descent]) -> bool:
    """True iff every descent contains a vertex of Sv"""
    chosen = set(Sv)
    return all(not chosen.isdisjoint(d.vertices) for d in D)


def is_gds(G: OrderedGraph, S: PartialColoring, target: Optional[ProperColoring] = None) -> bool:
    """
    Check whether S is a greedy defining set

    Args:
        G: Ordered graph
        S: Pre-coloring
        target: When given, S must drive first-fit to exactly this coloring

    Returns:
        Without target: first-fit from S is proper and uses at most chi(G) colors.
        With target: first-fit from S reproduces target exactly.
    """
    _check_partial(G, S)
    if target is not None:
        check_proper(G, target)
        for v, c in S.items():
            if target[v] != c:
                raise InputError(f"defining set colors vertex {v} with {c}, target has {target[v]}")
        return greedy_color(G, S).coloring == target

    outcome = greedy_color(G, S)
    if not outcome.proper:
        return False
    return outcome.max_color <= chromatic_number(G)
