"""
Forest Greedy Defining Numbers
Polynomial-time GDN for trees and forests by leaf peeling, and the exchange that
moves a defining set of a 2-colored connected bipartite graph onto color 1
"""

import logging
from typing import Dict, List, Optional, Set, Tuple
from dataclasses import dataclass

import networkx as nx

from exact_solvers import GdnResult
from gds_errors import InputError
from greedy_core import OrderedGraph, PartialColoring, ProperColoring, check_proper, is_gds

logger = logging.getLogger(__name__)


@dataclass
class TreeInstance:
    """A connected acyclic ordered graph with one of its two proper 2-colorings"""
    tree: OrderedGraph
    coloring: ProperColoring

    def __post_init__(self):
        if self.tree.n == 0 or not nx.is_tree(self.tree.to_networkx()):
            raise InputError("tree instance must be connected and acyclic")
        check_proper(self.tree, self.coloring)
        if any(c not in (1, 2) for c in self.coloring.values()):
            raise InputError("tree colorings use colors 1 and 2 only")
        if self.tree.n == 1 and self.coloring[1] != 1:
            raise InputError("a single-vertex tree is colored 1")

    @classmethod
    def from_root_color(cls, tree: OrderedGraph, root_color: int = 1) -> 'TreeInstance':
        """Build the 2-coloring in which the earliest vertex in the order gets root_color"""
        root = tree.order[0]
        depths = nx.single_source_shortest_path_length(tree.to_networkx(), root)
        if tree.n == 1:
            root_color = 1
        other = 3 - root_color
        coloring = {v: root_color if d % 2 == 0 else other for v, d in depths.items()}
        return cls(tree=tree, coloring=coloring)


def _rooted_order(adjacency: Dict[int, Set[int]], root: int) -> Tuple[List[int], Dict[int, Optional[int]]]:
    """BFS order of root's tree and each vertex's parent (None for the root)"""
    parent: Dict[int, Optional[int]] = {root: None}
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for u in adjacency[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    return order, parent


def _peel(adjacency: Dict[int, Set[int]], position: Dict[int, int], coloring: Dict[int, int],
          order: List[int], parent: Dict[int, Optional[int]]) -> List[int]:
    """
    Minimum set of color-1 vertices dominating the descent heads of one tree

    Heads are visited deepest first. An undominated head takes its parent,
    which covers everything a child of the head could still cover; the root
    takes its earliest neighbor.

    Args:
        adjacency: Adjacency of the whole forest
        position: Order positions
        coloring: 2-coloring of (at least) this tree
        order: BFS order of the tree from its root
        parent: BFS parents

    Returns:
        The chosen color-1 vertices K
    """
    chosen: List[int] = []
    dominated: Set[int] = set()
    for v in reversed(order):
        if coloring[v] != 2 or v in dominated:
            continue
        pos = position[v]
        if any(position[u] < pos for u in adjacency[v]):
            continue
        u = parent[v]
        if u is None:
            u = min(adjacency[v], key=position.__getitem__)
        chosen.append(u)
        dominated.update(adjacency[u])
    return chosen


def tree_gdn_fixed(T: TreeInstance) -> GdnResult:
    """
    GDN(T, order, C) for a tree and one of its 2-colorings

    Descent heads are the color-2 vertices whose neighbors all come later;
    K is a smallest set of color-1 vertices adjacent to every head.

    Args:
        T: Tree instance

    Returns:
        GdnResult with K colored 1
    """
    order, parent = _rooted_order(T.tree.adjacency, T.tree.order[0])
    chosen = _peel(T.tree.adjacency, T.tree.position, T.coloring, order, parent)
    witness = {u: 1 for u in sorted(chosen)}
    return GdnResult(size=len(witness), witness=witness)


def forest_gdn(F: OrderedGraph) -> GdnResult:
    """
    GDN(F, order) of a forest: per tree, the better of its two 2-colorings, summed

    Args:
        F: Acyclic ordered graph

    Returns:
        GdnResult whose witness is the union of the per-tree witnesses
    """
    trees: List[Tuple[List[int], Dict[int, Optional[int]]]] = []
    seen: Set[int] = set()
    for root in F.order:
        if root not in seen:
            order, parent = _rooted_order(F.adjacency, root)
            seen.update(order)
            trees.append((order, parent))
    if len(F.edges) != F.n - len(trees):
        raise InputError("forest_gdn requires an acyclic graph")

    size = 0
    witness: Dict[int, int] = {}
    for order, parent in trees:
        if len(order) == 1:
            continue
        # parents precede their children in BFS order
        depth_even = {order[0]: True}
        for v in order[1:]:
            depth_even[v] = not depth_even[parent[v]]
        best = None
        for root_color in (1, 2):
            coloring = {v: root_color if even else 3 - root_color for v, even in depth_even.items()}
            chosen = _peel(F.adjacency, F.position, coloring, order, parent)
            if best is None or len(chosen) < len(best[0]):
                best = (chosen, coloring)
        chosen, coloring = best
        size += len(chosen)
        witness.update({u: coloring[u] for u in chosen})

    logger.debug(f"forest gdn {size} on {F!r}")
    return GdnResult(size=size, witness=dict(sorted(witness.items())))


def shift_to_color_one(G: OrderedGraph, C: ProperColoring, S: PartialColoring) -> PartialColoring:
    """
    Move a defining set of a 2-colored connected bipartite graph onto color-1 vertices

    Each color-2 member is dropped when the rest still defines C, and otherwise
    swapped for its earliest neighbor (which has color 1).

    Args:
        G: Connected bipartite ordered graph
        C: Proper 2-coloring
        S: Greedy defining set for (G, order, C)

    Returns:
        A defining set for C of size at most |S| using only color-1 vertices
    """
    if not is_gds(G, S, target=C):
        raise InputError("shift_to_color_one needs a greedy defining set of the given coloring")
    current = dict(S)
    for v in sorted((v for v, c in S.items() if c == 2), key=G.position.__getitem__):
        del current[v]
        if is_gds(G, current, target=C):
            continue
        if not G.adjacency[v]:
            raise InputError(f"vertex {v} has no neighbor to exchange with; graph must be connected")
        u = min(G.adjacency[v], key=G.position.__getitem__)
        current[u] = C[u]
    return dict(sorted(current.items()))
