"""
Vertex Cover Reductions
Builds the ordered graphs that encode vertex cover as a greedy defining set
problem (fixed coloring, and the connected bipartite uncolored case), and maps
solutions across in both directions
"""

import logging
from typing import Dict, FrozenSet, Hashable, Iterable, List, Set, Tuple, Union
from dataclasses import dataclass, field

import networkx as nx

from gds_errors import InputError, InternalInvariantError
from greedy_core import OrderedGraph, PartialColoring, ProperColoring, is_gds

logger = logging.getLogger(__name__)


@dataclass
class Thm2Instance:
    """
    Fixed-coloring instance: K_n on 1..n followed by a copy of F

    Instance vertex n + j is the F-vertex colored j; it sits at order position
    2n - j + 1, while K_n vertex i sits at position i.
    """
    graph: OrderedGraph
    coloring: ProperColoring
    f_coloring: Dict[Hashable, int]
    back_map: Dict[int, Hashable]
    source: nx.Graph

    def copy_of(self, v: Hashable) -> int:
        return len(self.f_coloring) + self.f_coloring[v]


@dataclass
class Thm4Instance:
    """
    Uncolored bipartite instance with parts X = V1 + E1 and Y = V2 + E2

    Vertices are numbered block by block in the order E2, E1, V2, V1 and the
    processing order is the identity.
    """
    graph: OrderedGraph
    source: nx.Graph
    vertex_copies: Dict[Hashable, Tuple[int, int]]
    edge_copies: Dict[Tuple[Hashable, Hashable], Tuple[int, int]]
    back_map: Dict[int, Union[Hashable, Tuple[Hashable, Hashable]]] = field(default_factory=dict)
    part_x: FrozenSet[int] = frozenset()
    edge_copy_ids: FrozenSet[int] = frozenset()

    def coloring(self, x_color: int = 1) -> ProperColoring:
        """The proper 2-coloring giving X the color x_color"""
        other = 3 - x_color
        return {v: x_color if v in self.part_x else other for v in self.graph.vertices}


def _sorted_vertices(F: nx.Graph) -> List[Hashable]:
    return sorted(F.nodes)


def _sorted_edges(F: nx.Graph) -> List[Tuple[Hashable, Hashable]]:
    return sorted(tuple(sorted(e)) for e in F.edges)


def _check_simple(F: nx.Graph):
    if F.is_directed() or F.is_multigraph():
        raise InputError("source graph must be a simple undirected graph")
    if nx.number_of_selfloops(F):
        raise InputError("source graph must not contain self-loops")


def thm2_instance(F: nx.Graph) -> Thm2Instance:
    """
    Encode vertex cover of F as GDN(G, order, C)

    F's k-th vertex (in sorted order) gets color k. The descents of the
    result are exactly the pairs of copies of F's edges.

    Args:
        F: Simple graph with at least one vertex

    Returns:
        Thm2Instance
    """
    _check_simple(F)
    vertices = _sorted_vertices(F)
    n = len(vertices)
    if n == 0:
        raise InputError("source graph needs at least one vertex")

    f_coloring = {v: k for k, v in enumerate(vertices, start=1)}
    by_color = {k: v for v, k in f_coloring.items()}

    edges: List[Tuple[int, int]] = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for u, v in _sorted_edges(F):
        edges.append((n + f_coloring[u], n + f_coloring[v]))
    for v in vertices:
        j = f_coloring[v]
        for i in range(1, j):
            if not F.has_edge(v, by_color[i]):
                edges.append((i, n + j))

    order = list(range(1, n + 1)) + [n + j for j in range(n, 0, -1)]
    graph = OrderedGraph(2 * n, edges, order)
    coloring = {i: i for i in range(1, n + 1)}
    coloring.update({n + j: j for j in range(1, n + 1)})
    back_map = {n + f_coloring[v]: v for v in vertices}

    logger.debug(f"thm2 instance: {n} source vertices -> {graph!r}")
    return Thm2Instance(graph=graph, coloring=coloring, f_coloring=f_coloring, back_map=back_map, source=F)


def thm4_instance(F: nx.Graph) -> Thm4Instance:
    """
    Encode vertex cover of a connected F as GDN(G, order) of a connected bipartite graph

    v in V1 meets e in E2 (and v in V2 meets e in E1) when e is incident to v;
    each v in V1 is joined to its copy in V2.

    Args:
        F: Connected simple graph with at least one edge

    Returns:
        Thm4Instance
    """
    _check_simple(F)
    if F.number_of_edges() == 0:
        raise InputError("source graph needs at least one edge")
    if not nx.is_connected(F):
        raise InputError("source graph must be connected")

    vertices = _sorted_vertices(F)
    f_edges = _sorted_edges(F)
    p, m = len(vertices), len(f_edges)

    e2 = {e: k for k, e in enumerate(f_edges, start=1)}
    e1 = {e: m + k for k, e in enumerate(f_edges, start=1)}
    v2 = {v: 2 * m + k for k, v in enumerate(vertices, start=1)}
    v1 = {v: 2 * m + p + k for k, v in enumerate(vertices, start=1)}

    edges: List[Tuple[int, int]] = []
    for e in f_edges:
        for v in e:
            edges.append((v1[v], e2[e]))
            edges.append((v2[v], e1[e]))
    for v in vertices:
        edges.append((v1[v], v2[v]))

    graph = OrderedGraph(2 * (p + m), edges)
    back_map: Dict[int, Union[Hashable, Tuple[Hashable, Hashable]]] = {}
    for e in f_edges:
        back_map[e2[e]] = e
        back_map[e1[e]] = e
    for v in vertices:
        back_map[v2[v]] = v
        back_map[v1[v]] = v

    instance = Thm4Instance(
        graph=graph,
        source=F,
        vertex_copies={v: (v1[v], v2[v]) for v in vertices},
        edge_copies={e: (e1[e], e2[e]) for e in f_edges},
        back_map=back_map,
        part_x=frozenset(list(v1.values()) + list(e1.values())),
        edge_copy_ids=frozenset(list(e1.values()) + list(e2.values())),
    )
    logger.debug(f"thm4 instance: {p} vertices, {m} edges -> {graph!r}")
    return instance


def is_vertex_cover(F: nx.Graph, K: Iterable[Hashable]) -> bool:
    chosen = set(K)
    return all(u in chosen or v in chosen for u, v in F.edges)


def map_cover_to_gds(inst: Union[Thm2Instance, Thm4Instance], K: Iterable[Hashable]) -> PartialColoring:
    """
    Turn a vertex cover of the source graph into a greedy defining set of the instance

    Args:
        inst: Instance built by thm2_instance or thm4_instance
        K: Vertex cover of inst.source

    Returns:
        Pre-coloring: copies of K with their instance colors (V1 copies colored 1 for Thm4)
    """
    cover = set(K)
    unknown = cover - set(inst.source.nodes)
    if unknown:
        raise InputError(f"cover names unknown vertices {sorted(unknown)}")
    if not is_vertex_cover(inst.source, cover):
        raise InputError("given vertex set is not a vertex cover of the source graph")

    if isinstance(inst, Thm2Instance):
        result = {inst.copy_of(v): inst.f_coloring[v] for v in cover}
    else:
        result = {inst.vertex_copies[v][0]: 1 for v in cover}
    return dict(sorted(result.items()))


def map_gds_to_cover(inst: Union[Thm2Instance, Thm4Instance], S: PartialColoring) -> Set[Hashable]:
    """
    Read a vertex cover of the source graph off a greedy defining set of the instance

    Edge copies map to the lower endpoint of their edge; K_n vertices map to nothing.

    Args:
        inst: Instance built by thm2_instance or thm4_instance
        S: Greedy defining set of the instance

    Returns:
        Vertex cover of inst.source with at most |S| vertices
    """
    if isinstance(inst, Thm2Instance):
        if not is_gds(inst.graph, S, target=inst.coloring):
            raise InputError("pre-coloring is not a greedy defining set of the instance coloring")
        cover = {inst.back_map[v] for v in S if v in inst.back_map}
    else:
        if not is_gds(inst.graph, S):
            raise InputError("pre-coloring is not a greedy defining set of the instance")
        cover = set()
        for v in S:
            origin = inst.back_map[v]
            cover.add(min(origin) if v in inst.edge_copy_ids else origin)

    if not is_vertex_cover(inst.source, cover):
        raise InternalInvariantError("a greedy defining set of the instance mapped to a non-cover")
    return cover
