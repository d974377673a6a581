"""
Latin Squares as Greedy-Colored Rook's Graphs
Descent triples, the row/column/entry cover graphs, cover-derived greedy
defining sets, greedy completion, the size bound report and g(n) for tiny orders
"""

import logging
import math
import random
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple
from dataclasses import dataclass, field

import networkx as nx

from exact_solvers import GdnResult, SetFamily, greedy_hitting_set, min_hitting_set, min_vertex_cover
from gds_errors import InputError, InternalInvariantError
from greedy_core import OrderedGraph, ProperColoring
from solver_config import get_solver_config

logger = logging.getLogger(__name__)

# (row, col) and (row, col, entry), all 1-based
Position = Tuple[int, int]
Cell = Tuple[int, int, int]


class LatinSquare:
    """An n x n grid whose rows and columns are permutations of 1..n"""

    def __init__(self, grid: Sequence[Sequence[int]]):
        self.grid: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in grid)
        self.n = len(self.grid)
        symbols = set(range(1, self.n + 1))
        for i, row in enumerate(self.grid, start=1):
            if len(row) != self.n or set(row) != symbols:
                raise InputError(f"row {i} is not a permutation of 1..{self.n}")
        for j in range(self.n):
            if {row[j] for row in self.grid} != symbols:
                raise InputError(f"column {j + 1} is not a permutation of 1..{self.n}")

    def entry(self, r: int, c: int) -> int:
        return self.grid[r - 1][c - 1]

    def cells(self) -> Iterator[Cell]:
        """All cells in lexicographic order"""
        for r in range(1, self.n + 1):
            for c in range(1, self.n + 1):
                yield (r, c, self.entry(r, c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return self.grid == other.grid

    def __hash__(self) -> int:
        return hash(self.grid)

    def __repr__(self) -> str:
        return f"LatinSquare({[list(row) for row in self.grid]})"


class PartialLatinSquare:
    """Filled cells of an n x n grid with no entry repeated in a row or column"""

    def __init__(self, n: int, cells: Optional[Dict[Position, int]] = None):
        self.n = n
        self.cells: Dict[Position, int] = dict(sorted((cells or {}).items()))
        rows: Set[Tuple[int, int]] = set()
        cols: Set[Tuple[int, int]] = set()
        for (r, c), v in self.cells.items():
            if not (1 <= r <= n and 1 <= c <= n and 1 <= v <= n):
                raise InputError(f"cell ({r},{c};{v}) is outside an order-{n} square")
            if (r, v) in rows:
                raise InputError(f"entry {v} repeated in row {r}")
            if (c, v) in cols:
                raise InputError(f"entry {v} repeated in column {c}")
            rows.add((r, v))
            cols.add((c, v))

    @classmethod
    def from_cells(cls, n: int, cells: Sequence[Cell]) -> 'PartialLatinSquare':
        """Build from (r, c, v) triples; a cell given twice with different entries is rejected"""
        filled: Dict[Position, int] = {}
        for r, c, v in cells:
            if filled.get((r, c), v) != v:
                raise InputError(f"cell ({r},{c}) given with entries {filled[(r, c)]} and {v}")
            filled[(r, c)] = v
        return cls(n, filled)

    def as_cells(self) -> List[Cell]:
        return [(r, c, v) for (r, c), v in self.cells.items()]

    def __len__(self) -> int:
        return len(self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialLatinSquare):
            return NotImplemented
        return self.n == other.n and self.cells == other.cells

    def __repr__(self) -> str:
        return f"PartialLatinSquare(n={self.n}, cells={self.as_cells()})"


@dataclass(frozen=True)
class LatinDescent:
    """Cells (i,j;y), (i,k;x) and (r,j;x) with k > j, r > i and x < y"""
    y_cell: Cell
    row_mate: Cell
    col_mate: Cell

    @property
    def positions(self) -> FrozenSet[Position]:
        return frozenset((cell[0], cell[1]) for cell in (self.y_cell, self.row_mate, self.col_mate))


class CoverKind(Enum):
    """Which projection of the descents a cover graph is built from"""
    ROW = "rows"
    COL = "cols"
    ENTRY = "entries"


@dataclass
class CoverGraph:
    """
    Disjoint union of one graph per row, column or entry value

    ROW/COL components have the entry values as vertices; ENTRY components have
    the positions holding that entry. cell_of maps (component key, vertex) to a position.
    """
    kind: CoverKind
    components: Dict[int, nx.Graph] = field(default_factory=dict)
    cell_of: Dict[Tuple[int, object], Position] = field(default_factory=dict)

    def edge_count(self) -> int:
        return sum(g.number_of_edges() for g in self.components.values())


@dataclass
class CompletionResult:
    """Outcome of greedy completion: a square, or the first cell with no admissible entry"""
    success: bool
    square: Optional[LatinSquare] = None
    failed_cell: Optional[Position] = None


@dataclass
class BoundReport:
    n: int
    cover_size: int
    bound: float
    holds: bool
    exact: bool
    cells: List[Cell] = field(default_factory=list)


def _locate(L: LatinSquare) -> Tuple[Dict[Tuple[int, int], int], Dict[Tuple[int, int], int]]:
    """column of x in row r, and row of x in column c"""
    col_in_row: Dict[Tuple[int, int], int] = {}
    row_in_col: Dict[Tuple[int, int], int] = {}
    for r, c, v in L.cells():
        col_in_row[(r, v)] = c
        row_in_col[(c, v)] = r
    return col_in_row, row_in_col


def latin_descents(L: LatinSquare) -> List[LatinDescent]:
    """
    All descent triples of L

    For every cell (i,j;y) and every x < y, the x in row i and the x in
    column j are unique; the triple is a descent when both lie after the
    y cell (to its right and below it).
    """
    col_in_row, row_in_col = _locate(L)
    descents: List[LatinDescent] = []
    for i, j, y in L.cells():
        for x in range(1, y):
            k = col_in_row[(i, x)]
            r = row_in_col[(j, x)]
            if k > j and r > i:
                descents.append(LatinDescent(y_cell=(i, j, y), row_mate=(i, k, x), col_mate=(r, j, x)))
    return descents


def cell_vertex(n: int, r: int, c: int) -> int:
    """Rook's graph vertex of cell (r, c) under the lexicographic order"""
    return (r - 1) * n + c


def to_ordered_instance(L: LatinSquare) -> Tuple[OrderedGraph, ProperColoring]:
    """
    Rook's graph K_n x K_n on the cells in lexicographic order, colored by the entries

    Returns:
        (graph, coloring); cell (r, c) is vertex (r - 1) * n + c
    """
    n = L.n
    edges = []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            v = cell_vertex(n, r, c)
            for c2 in range(c + 1, n + 1):
                edges.append((v, cell_vertex(n, r, c2)))
            for r2 in range(r + 1, n + 1):
                edges.append((v, cell_vertex(n, r2, c)))
    graph = OrderedGraph(n * n, edges)
    coloring = {cell_vertex(n, r, c): v for r, c, v in L.cells()}
    return graph, coloring


def build_cover_graph(L: LatinSquare, kind: CoverKind) -> CoverGraph:
    """
    Project every descent onto a row pair, a column pair or an equal-entry pair

    Args:
        L: Latin square
        kind: CoverKind.ROW, CoverKind.COL or CoverKind.ENTRY

    Returns:
        CoverGraph with all n components (edgeless ones included)
    """
    n = L.n
    cover = CoverGraph(kind=kind)
    col_in_row, row_in_col = _locate(L)
    for key in range(1, n + 1):
        graph = nx.Graph()
        if kind is CoverKind.ROW:
            graph.add_nodes_from(range(1, n + 1))
            for x in range(1, n + 1):
                cover.cell_of[(key, x)] = (key, col_in_row[(key, x)])
        elif kind is CoverKind.COL:
            graph.add_nodes_from(range(1, n + 1))
            for x in range(1, n + 1):
                cover.cell_of[(key, x)] = (row_in_col[(key, x)], key)
        else:
            for r in range(1, n + 1):
                position = (r, col_in_row[(r, key)])
                graph.add_node(position)
                cover.cell_of[(key, position)] = position
        cover.components[key] = graph

    for d in latin_descents(L):
        (i, j, y), (_, k, x), (r, _, _) = d.y_cell, d.row_mate, d.col_mate
        if kind is CoverKind.ROW:
            cover.components[i].add_edge(x, y)
        elif kind is CoverKind.COL:
            cover.components[j].add_edge(x, y)
        else:
            cover.components[x].add_edge((i, k), (r, j))
    return cover


def _covers(cover_graph: CoverGraph, cover: Set[Tuple[int, object]]) -> bool:
    for key, graph in cover_graph.components.items():
        for a, b in graph.edges:
            if (key, a) not in cover and (key, b) not in cover:
                return False
    return True


def gds_from_cover(L: LatinSquare, kind: CoverKind, cover) -> PartialLatinSquare:
    """
    Map a vertex cover of a cover graph to a greedy defining set of L

    Args:
        L: Latin square
        kind: Which cover graph the cover belongs to
        cover: Iterable of (component key, vertex) pairs

    Returns:
        The covered cells with their entries
    """
    cover_graph = build_cover_graph(L, kind)
    chosen = set(cover)
    unknown = [v for v in chosen if v not in cover_graph.cell_of]
    if unknown:
        raise InputError(f"cover names vertices outside the {kind.value} cover graph: {sorted(unknown, key=str)[:3]}")
    if not _covers(cover_graph, chosen):
        raise InputError(f"vertex set is not a cover of the {kind.value} cover graph")

    positions = {cover_graph.cell_of[v] for v in chosen}
    defining = PartialLatinSquare(L.n, {p: L.entry(*p) for p in positions})
    if not verify_latin_gds(L, defining):
        raise InternalInvariantError(f"{kind.value} cover did not yield a greedy defining set")
    return defining


def min_cover_gds(L: LatinSquare, kind: CoverKind, exact: bool = True) -> Tuple[Set[Tuple[int, object]], PartialLatinSquare]:
    """
    Smallest cover of one cover graph (per component) and the defining set it gives

    Non-exact mode takes both ends of a maximal matching (at most twice the optimum).
    """
    cover_graph = build_cover_graph(L, kind)
    cover: Set[Tuple[int, object]] = set()
    for key, graph in cover_graph.components.items():
        if graph.number_of_edges() == 0:
            continue
        if exact:
            part = min_vertex_cover(graph).witness
        else:
            part = {v for edge in nx.maximal_matching(graph) for v in edge}
        cover |= {(key, v) for v in part}
    return cover, gds_from_cover(L, kind, cover)


def proposition_gds(L: LatinSquare) -> Tuple[CoverKind, PartialLatinSquare]:
    """The smallest of the three cover-graph defining sets (ties resolved ROW, COL, ENTRY)"""
    best: Optional[Tuple[CoverKind, PartialLatinSquare]] = None
    for kind in CoverKind:
        _, defining = min_cover_gds(L, kind)
        if best is None or len(defining) < len(best[1]):
            best = (kind, defining)
    return best


def greedy_complete(P: PartialLatinSquare) -> CompletionResult:
    """
    Fill empty cells in lexicographic order with the smallest entry absent from
    the cell's row and column (every filled cell counts, including later ones)

    Args:
        P: Partial Latin square

    Returns:
        CompletionResult; failure names the first cell where no entry <= n fits
    """
    n = P.n
    grid = [[0] * n for _ in range(n)]
    in_row = [set() for _ in range(n + 1)]
    in_col = [set() for _ in range(n + 1)]
    for (r, c), v in P.cells.items():
        grid[r - 1][c - 1] = v
        in_row[r].add(v)
        in_col[c].add(v)

    for r in range(1, n + 1):
        for c in range(1, n + 1):
            if grid[r - 1][c - 1]:
                continue
            v = 1
            while v in in_row[r] or v in in_col[c]:
                v += 1
            if v > n:
                logger.debug(f"greedy completion blocked at ({r},{c})")
                return CompletionResult(success=False, failed_cell=(r, c))
            grid[r - 1][c - 1] = v
            in_row[r].add(v)
            in_col[c].add(v)

    return CompletionResult(success=True, square=LatinSquare(grid))


def _check_agrees(L: LatinSquare, D: PartialLatinSquare):
    if D.n != L.n:
        raise InputError(f"defining set has order {D.n}, square has order {L.n}")
    for (r, c), v in D.cells.items():
        if L.entry(r, c) != v:
            raise InputError(f"cell ({r},{c};{v}) disagrees with the square entry {L.entry(r, c)}")


def verify_latin_gds(L: LatinSquare, D: PartialLatinSquare) -> bool:
    """
    True iff greedy completion of D reproduces L

    The answer is cross-checked against the descent test (D meets every
    descent); a disagreement raises InternalInvariantError.
    """
    _check_agrees(L, D)
    completion = greedy_complete(D)
    by_greedy = completion.success and completion.square == L
    filled = set(D.cells)
    by_descents = all(not filled.isdisjoint(d.positions) for d in latin_descents(L))
    if by_greedy != by_descents:
        raise InternalInvariantError(
            f"greedy completion says {by_greedy}, descent transversal says {by_descents} for {D!r}"
        )
    return by_greedy


def min_latin_gds(L: LatinSquare, exact: Optional[bool] = None, order: Optional[Sequence[Position]] = None) -> GdnResult:
    """
    Minimum greedy defining set of L as a minimum transversal of its descents

    Args:
        L: Latin square
        exact: True forces exact search (guarded by GDS_LATIN_EXACT_MAX_ORDER),
            False forces the greedy transversal, None picks by the guard
        order: Optional cell priority used for tie-breaking

    Returns:
        GdnResult whose witness is a PartialLatinSquare; exact=False for the heuristic
    """
    guard = get_solver_config().guard('GDS_LATIN_EXACT_MAX_ORDER')
    if exact is None:
        exact = guard.allows(L.n)
        if not exact:
            logger.warning(f"order {L.n} is above the exact limit {guard.limit}; using the greedy transversal")
    elif exact:
        guard.check(L.n)

    universe = [(r, c) for r, c, _ in L.cells()]
    family = SetFamily(universe=universe, sets=[d.positions for d in latin_descents(L)])
    result = min_hitting_set(family, order) if exact else greedy_hitting_set(family, order)
    witness = PartialLatinSquare(L.n, {p: L.entry(*p) for p in result.witness})
    return GdnResult(size=result.size, witness=witness, exact=result.exact)


def greedy_square(n: int) -> CompletionResult:
    """Greedy completion of the empty order-n square; succeeds exactly when g(n) = 0"""
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    return greedy_complete(PartialLatinSquare(n))


def enumerate_latin_squares(n: int) -> Iterator[LatinSquare]:
    """All order-n Latin squares, row-major backtracking with smallest entries first"""
    grid = [[0] * n for _ in range(n)]
    in_row = [set() for _ in range(n)]
    in_col = [set() for _ in range(n)]

    def backtrack(index: int) -> Iterator[LatinSquare]:
        if index == n * n:
            yield LatinSquare(grid)
            return
        r, c = divmod(index, n)
        for v in range(1, n + 1):
            if v in in_row[r] or v in in_col[c]:
                continue
            grid[r][c] = v
            in_row[r].add(v)
            in_col[c].add(v)
            yield from backtrack(index + 1)
            in_row[r].discard(v)
            in_col[c].discard(v)
        grid[r][c] = 0

    yield from backtrack(0)


def g_number(n: int) -> int:
    """
    g(n): minimum greedy defining number over all order-n Latin squares

    Exhaustive; guarded by GDS_G_NUMBER_MAX_ORDER (576 squares at n = 4).
    """
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    get_solver_config().check('GDS_G_NUMBER_MAX_ORDER', n)
    best: Optional[int] = None
    examined = 0
    for square in enumerate_latin_squares(n):
        examined += 1
        size = min_latin_gds(square, exact=True).size
        if best is None or size < best:
            best = size
        if best == 0:
            break
    logger.info(f"g({n}) = {best} after {examined} squares")
    return best


def size_bound(n: int) -> float:
    """n^2 - n ln(4n) / 4"""
    return n * n - n * math.log(4 * n) / 4


def bound_report(L: LatinSquare, exact: bool = True) -> BoundReport:
    """
    Compare a cover of E(L) against the n^2 - n ln(4n)/4 bound

    Exact mode (guarded by GDS_BOUND_EXACT_MAX_ORDER) takes a minimum cover of
    every entry component; otherwise a maximal-matching cover is used.
    """
    if exact:
        get_solver_config().check('GDS_BOUND_EXACT_MAX_ORDER', L.n)
    _, defining = min_cover_gds(L, CoverKind.ENTRY, exact=exact)
    bound = size_bound(L.n)
    return BoundReport(
        n=L.n,
        cover_size=len(defining),
        bound=bound,
        holds=len(defining) <= bound,
        exact=exact,
        cells=defining.as_cells(),
    )


def random_latin(n: int, seed: int) -> LatinSquare:
    """
    Random order-n Latin square, row by row with randomized backtracking

    Deterministic for a given (n, seed); not uniformly distributed.
    """
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    rng = random.Random(seed)
    rows: List[List[int]] = []
    in_col = [set() for _ in range(n)]

    for _ in range(n):
        row = [0] * n
        used: Set[int] = set()

        # a Latin rectangle always extends by one row, so this search cannot fail
        def fill(c: int) -> bool:
            if c == n:
                return True
            candidates = [v for v in range(1, n + 1) if v not in used and v not in in_col[c]]
            rng.shuffle(candidates)
            for v in candidates:
                row[c] = v
                used.add(v)
                if fill(c + 1):
                    return True
                used.discard(v)
            return False

        if not fill(0):
            raise InternalInvariantError("row extension failed for a Latin rectangle")
        for c, v in enumerate(row):
            in_col[c].add(v)
        rows.append(row)

    return LatinSquare(rows)
