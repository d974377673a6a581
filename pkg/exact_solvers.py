"""
Exact Solvers
Minimum hitting set, minimum vertex cover, greedy defining numbers for a fixed
coloring and over all colorings, plus an independent brute-force GDN oracle
"""

import logging
from collections import deque
from itertools import combinations, product
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Union
from dataclasses import dataclass, field

import networkx as nx

from gds_errors import InfeasibleError, InputError
from greedy_core import (
    OrderedGraph,
    ProperColoring,
    check_proper,
    chromatic_number,
    is_gds,
    scan_descents,
)
from solver_config import get_solver_config

logger = logging.getLogger(__name__)


@dataclass
class SetFamily:
    """A universe and a collection of non-empty member sets to be hit"""
    universe: FrozenSet[Hashable]
    sets: List[FrozenSet[Hashable]] = field(default_factory=list)

    def __post_init__(self):
        self.universe = frozenset(self.universe)
        self.sets = [frozenset(s) for s in self.sets]
        for s in self.sets:
            if not s <= self.universe:
                raise InputError(f"member set {sorted(s - self.universe)} lies outside the universe")


@dataclass
class GdnResult:
    """Size of a minimum solution and a witness attaining it"""
    size: int
    witness: Union[FrozenSet[Hashable], Dict[Hashable, int]]
    exact: bool = True


def _rank_function(universe: Iterable[Hashable], order: Optional[Sequence[Hashable]]) -> Callable[[Hashable], Any]:
    if order is None:
        return lambda e: e
    rank = {e: i for i, e in enumerate(order)}
    missing = [e for e in universe if e not in rank]
    if missing:
        raise InputError(f"element order misses {len(missing)} universe elements")
    return rank.__getitem__


def _normalize(sets: Iterable[FrozenSet]) -> List[FrozenSet]:
    """Drop duplicates and supersets; hitting the subset already hits the superset"""
    unique = sorted(set(sets), key=len)
    kept: List[FrozenSet] = []
    for s in unique:
        if not any(t <= s for t in kept):
            kept.append(s)
    return kept


def _packing_bound(sets: List[FrozenSet]) -> int:
    """Pairwise-disjoint members need one distinct element each"""
    used: Set = set()
    count = 0
    for s in sorted(sets, key=len):
        if used.isdisjoint(s):
            used |= s
            count += 1
    return count


def _greedy_cover(sets: List[FrozenSet], key: Callable[[Hashable], Any]) -> List[Hashable]:
    remaining = list(sets)
    chosen: List[Hashable] = []
    while remaining:
        counts: Dict[Hashable, int] = {}
        for s in remaining:
            for e in s:
                counts[e] = counts.get(e, 0) + 1
        best = min(counts, key=lambda e: (-counts[e], key(e)))
        chosen.append(best)
        remaining = [s for s in remaining if best not in s]
    return chosen


def _hittable(sets: List[FrozenSet], budget: int, key: Callable[[Hashable], Any]) -> bool:
    """Branch and bound: is there a hitting set of at most `budget` elements?"""
    if not sets:
        return True
    if budget <= 0:
        return False
    if _packing_bound(sets) > budget:
        return False
    pivot = min(sets, key=len)
    excluded: Set[Hashable] = set()
    for e in sorted(pivot, key=key):
        # branches for earlier pivot elements already covered every solution using them
        remaining = [s - excluded for s in sets if e not in s]
        if all(remaining_set for remaining_set in remaining):
            if _hittable(_normalize(remaining), budget - 1, key):
                return True
        excluded.add(e)
    return False


def _check_hitting_guard(universe_size: int, set_count: int):
    config = get_solver_config()
    if config.guard('GDS_HITTING_SET_MAX_UNIVERSE').allows(universe_size):
        return
    if config.guard('GDS_HITTING_SET_MAX_SETS').allows(set_count):
        return
    config.check('GDS_HITTING_SET_MAX_UNIVERSE', universe_size)


def greedy_hitting_set(F: SetFamily, order: Optional[Sequence[Hashable]] = None) -> GdnResult:
    """
    Greedy transversal: repeatedly take the element hitting the most unhit sets

    Args:
        F: Set family
        order: Tie-break priority over the universe (sorted order when omitted)

    Returns:
        GdnResult flagged exact=False
    """
    if any(not s for s in F.sets):
        raise InfeasibleError("set family contains an empty member; nothing can hit it")
    key = _rank_function(F.universe, order)
    chosen = _greedy_cover(_normalize(F.sets), key)
    return GdnResult(size=len(chosen), witness=frozenset(chosen), exact=False)


def min_hitting_set(F: SetFamily, order: Optional[Sequence[Hashable]] = None) -> GdnResult:
    """
    Minimum-cardinality subset of the universe meeting every member set

    Ties are broken toward the lexicographically smallest witness, reading
    elements in sorted order (or in `order` when given).

    Args:
        F: Set family
        order: Optional element priority for the tie-break

    Returns:
        GdnResult with a frozenset witness
    """
    if any(not s for s in F.sets):
        raise InfeasibleError("set family contains an empty member; nothing can hit it")
    _check_hitting_guard(len(F.universe), len(F.sets))
    key = _rank_function(F.universe, order)

    sets = _normalize(F.sets)
    if not sets:
        return GdnResult(size=0, witness=frozenset())

    upper = len(_greedy_cover(sets, key))
    optimum = upper
    for budget in range(_packing_bound(sets), upper):
        if _hittable(sets, budget, key):
            optimum = budget
            break

    # fix elements one by one in priority order, keeping an optimum completion feasible
    chosen: List[Hashable] = []
    remaining = sets
    budget = optimum
    candidates = sorted({e for s in sets for e in s}, key=key)
    for e in candidates:
        if not remaining:
            break
        with_e = [s for s in remaining if e not in s]
        if _hittable(_normalize(with_e), budget - 1, key):
            chosen.append(e)
            remaining = _normalize(with_e)
            budget -= 1
        else:
            remaining = _normalize([s - {e} for s in remaining])

    logger.debug(f"hitting set: {len(sets)} sets, optimum {optimum}, greedy bound {upper}")
    return GdnResult(size=len(chosen), witness=frozenset(chosen))


def _coverable(adjacency: Dict[Hashable, Set[Hashable]], budget: int) -> bool:
    """Is there a vertex cover of at most `budget` vertices? (branch on a max-degree vertex)"""
    edge_count = sum(len(nb) for nb in adjacency.values()) // 2
    if edge_count == 0:
        return True
    if budget <= 0:
        return False
    v = max(adjacency, key=lambda x: len(adjacency[x]))
    degree = len(adjacency[v])
    if edge_count > budget * degree:
        return False
    if _coverable(_remove_vertices(adjacency, {v}), budget - 1):
        return True
    if degree <= budget:
        return _coverable(_remove_vertices(adjacency, adjacency[v] | {v}), budget - degree)
    return False


def _remove_vertices(adjacency: Dict[Hashable, Set[Hashable]], removed: Set[Hashable]) -> Dict[Hashable, Set[Hashable]]:
    reduced = {}
    for x, nb in adjacency.items():
        if x in removed:
            continue
        rest = nb - removed
        if rest:
            reduced[x] = rest
    return reduced


def min_vertex_cover(H: nx.Graph) -> GdnResult:
    """
    Exact minimum vertex cover of a simple graph

    Args:
        H: networkx graph (vertex labels must be mutually sortable)

    Returns:
        GdnResult whose witness is the lexicographically smallest minimum cover
    """
    get_solver_config().check('GDS_VERTEX_COVER_MAX_VERTICES', H.number_of_nodes())
    if nx.number_of_selfloops(H):
        raise InputError("vertex cover input must be a simple graph without self-loops")

    adjacency = _remove_vertices({v: set(H.neighbors(v)) for v in sorted(H.nodes)}, set())
    optimum = 0
    while not _coverable(adjacency, optimum):
        optimum += 1

    chosen: Set[Hashable] = set()
    budget = optimum
    for v in sorted(H.nodes):
        if not adjacency:
            break
        if v not in adjacency:
            continue
        without_v = _remove_vertices(adjacency, {v})
        if _coverable(without_v, budget - 1):
            chosen.add(v)
            adjacency = without_v
            budget -= 1
        else:
            forced = adjacency[v]
            chosen |= forced
            adjacency = _remove_vertices(adjacency, forced | {v})
            budget -= len(forced)

    return GdnResult(size=len(chosen), witness=frozenset(chosen))


def gdn_fixed(G: OrderedGraph, C: ProperColoring, allowed: Optional[Iterable[int]] = None) -> GdnResult:
    """
    GDN(G, order, C): minimum transversal of the descents of C

    Args:
        G: Ordered graph
        C: Proper coloring of G
        allowed: Optional restriction on which vertices may enter the defining set

    Returns:
        GdnResult whose witness is a C-consistent pre-coloring
    """
    check_proper(G, C)
    descents = scan_descents(G, C)
    universe = frozenset(G.vertices) if allowed is None else frozenset(allowed) & frozenset(G.vertices)
    family = SetFamily(universe=universe, sets=[d.vertices & universe for d in descents])
    result = min_hitting_set(family)
    witness = {v: C[v] for v in sorted(result.witness)}
    return GdnResult(size=result.size, witness=witness)


def _search_order(G: OrderedGraph, vertices: Iterable[int]) -> List[int]:
    """Breadth-first order from the earliest vertex of each component, so every vertex but a root has a placed neighbor"""
    pending = sorted(set(vertices), key=G.position.__getitem__)
    seen: Set[int] = set()
    result: List[int] = []
    for root in pending:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            result.append(v)
            for u in sorted(G.adjacency[v], key=G.position.__getitem__):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return result


def enumerate_colorings(G: OrderedGraph, palette: int, vertices: Optional[Iterable[int]] = None) -> Iterator[Dict[int, int]]:
    """
    Yield every labeled proper coloring with colors 1..palette

    Args:
        G: Ordered graph
        palette: Number of available colors
        vertices: Color only these vertices (a union of components); all when omitted

    Yields:
        Fresh dictionaries, in backtracking order over a breadth-first search order
    """
    targets = _search_order(G, G.order if vertices is None else vertices)
    coloring: Dict[int, int] = {}

    def backtrack(i: int) -> Iterator[Dict[int, int]]:
        if i == len(targets):
            yield dict(coloring)
            return
        v = targets[i]
        blocked = {coloring[u] for u in G.adjacency[v] if u in coloring}
        for c in range(1, palette + 1):
            if c in blocked:
                continue
            coloring[v] = c
            yield from backtrack(i + 1)
            del coloring[v]

    yield from backtrack(0)


def _component_minimum(G: OrderedGraph, component: List[int], palette: int) -> GdnResult:
    universe = frozenset(component)
    best: Optional[GdnResult] = None
    for coloring in enumerate_colorings(G, palette, component):
        if best is not None and best.size == 0:
            break
        descents = scan_descents(G, coloring, heads=component)
        family = SetFamily(universe=universe, sets=[d.vertices for d in descents])
        result = min_hitting_set(family)
        if best is None or result.size < best.size:
            best = GdnResult(size=result.size, witness={v: coloring[v] for v in sorted(result.witness)})
    return best


def gdn(G: OrderedGraph) -> GdnResult:
    """
    GDN(G, order): minimum over all labeled proper chi(G)-colorings of GDN(G, order, C)

    Descents never leave a connected component, so the minimum is taken per
    component (each with the global palette 1..chi(G)) and summed.

    Args:
        G: Ordered graph

    Returns:
        GdnResult with a pre-coloring witness
    """
    if G.n == 0:
        return GdnResult(size=0, witness={})
    palette = chromatic_number(G)
    components = [sorted(c) for c in nx.connected_components(G.to_networkx())]
    components.sort(key=lambda c: G.position[min(c, key=G.position.__getitem__)])

    guard = get_solver_config().guard('GDS_GDN_MAX_VERTICES')
    for component in components:
        # a connected component has at most two colorings when the palette is {1, 2}
        if palette > 2:
            guard.check(len(component))

    size = 0
    witness: Dict[int, int] = {}
    for component in components:
        part = _component_minimum(G, component, palette)
        size += part.size
        witness.update(part.witness)
    logger.debug(f"gdn over {len(components)} components with palette {palette}: {size}")
    return GdnResult(size=size, witness=dict(sorted(witness.items())))


def brute_force_gdn_oracle(G: OrderedGraph) -> int:
    """
    Smallest k such that some k vertices with some colors in 1..chi(G) form a GDS

    Independent of the descent machinery; runs first-fit on every candidate.
    """
    get_solver_config().check('GDS_ORACLE_MAX_VERTICES', G.n)
    palette = chromatic_number(G)
    for k in range(G.n + 1):
        for subset in combinations(G.vertices, k):
            for colors in product(range(1, palette + 1), repeat=k):
                if is_gds(G, dict(zip(subset, colors))):
                    return k
    return G.n
