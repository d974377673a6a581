"""
Latin Square Secret Sharing
A dealer splits a Latin square key into greedy defining set fragments, one
defining set per authorized set; pooling an authorized set's pieces and running
greedy completion recovers the key
"""

import hashlib
import logging
import random
from typing import Dict, Iterable, List, Sequence, Tuple
from dataclasses import dataclass, field

from exact_solvers import SetFamily, greedy_hitting_set, min_hitting_set
from gds_errors import AuditError, InputError, InternalInvariantError
from latin_squares import (
    Cell, CompletionResult, LatinSquare, PartialLatinSquare,
    greedy_complete, latin_descents, verify_latin_gds,
)
from solver_config import get_solver_config

logger = logging.getLogger(__name__)


class AccessStructure:
    """Participants and the authorized sets (set id -> members) allowed to rebuild the key"""

    def __init__(self, participants: Iterable[str], authorized_sets: Dict[str, Iterable[str]]):
        self.participants: Tuple[str, ...] = tuple(sorted({str(p) for p in participants}))
        self.authorized_sets: Dict[str, Tuple[str, ...]] = {}
        known = set(self.participants)
        for set_id, members in authorized_sets.items():
            set_id = str(set_id)
            if set_id in self.authorized_sets:
                raise InputError(f"duplicate authorized set id '{set_id}'")
            member_tuple = tuple(sorted({str(m) for m in members}))
            if not member_tuple:
                raise InputError(f"authorized set '{set_id}' is empty")
            strangers = [m for m in member_tuple if m not in known]
            if strangers:
                raise InputError(f"authorized set '{set_id}' names unknown participants {strangers}")
            self.authorized_sets[set_id] = member_tuple

    def __repr__(self) -> str:
        return f"AccessStructure(participants={list(self.participants)}, sets={self.authorized_sets})"


@dataclass
class ShareBundle:
    """Pieces keyed by (participant, set id); each piece is a list of cells (r, c, v)"""
    n: int
    pieces: Dict[Tuple[str, str], List[Cell]] = field(default_factory=dict)

    def pieces_for(self, set_id: str) -> Dict[str, List[Cell]]:
        return {p: cells for (p, s), cells in self.pieces.items() if s == set_id}


@dataclass
class SetAudit:
    set_id: str
    members: Tuple[str, ...]
    size: int
    reconstructs: bool
    # participant -> whether the set still rebuilds the key without that participant's piece
    survives_dropout: Dict[str, bool] = field(default_factory=dict)

    @property
    def leaks(self) -> bool:
        return any(self.survives_dropout.values())


@dataclass
class AuditReport:
    n: int
    sets: List[SetAudit] = field(default_factory=list)
    trivially_recoverable: bool = False

    @property
    def sizes(self) -> List[int]:
        return [entry.size for entry in self.sets]


def derive_set_seed(seed: int, set_id: str) -> int:
    """Per-set seed, stable across processes and Python versions"""
    digest = hashlib.sha256(f"{seed}:{set_id}".encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')


def _defining_cells(L: LatinSquare, set_seed: int) -> List[Tuple[int, int]]:
    positions = [(r, c) for r, c, _ in L.cells()]
    order = list(positions)
    random.Random(set_seed).shuffle(order)
    family = SetFamily(universe=positions, sets=[d.positions for d in latin_descents(L)])
    if get_solver_config().guard('GDS_LATIN_EXACT_MAX_ORDER').allows(L.n):
        result = min_hitting_set(family, order)
    else:
        result = greedy_hitting_set(family, order)
    return sorted(result.witness)


def deal(L: LatinSquare, A: AccessStructure, seed: int = 0) -> ShareBundle:
    """
    Split L into pieces, one greedy defining set per authorized set

    A defining set smaller than its authorized set is padded with the
    lexicographically smallest further cells of L. Cells go round-robin,
    in lexicographic order, to the members sorted by identifier.

    Args:
        L: The key
        A: Access structure
        seed: Tie-break seed; the bundle is a pure function of (L, A, seed)

    Returns:
        ShareBundle
    """
    bundle = ShareBundle(n=L.n)
    for set_id, members in A.authorized_sets.items():
        chosen = _defining_cells(L, derive_set_seed(seed, set_id))
        chosen_set = set(chosen)
        for r, c, _ in L.cells():
            if len(chosen) >= len(members):
                break
            if (r, c) not in chosen_set:
                chosen.append((r, c))
                chosen_set.add((r, c))
        chosen.sort()

        defining = PartialLatinSquare(L.n, {p: L.entry(*p) for p in chosen})
        if not verify_latin_gds(L, defining):
            raise InternalInvariantError(f"dealt cells for set '{set_id}' do not define the key")

        for participant in members:
            bundle.pieces[(participant, set_id)] = []
        for index, (r, c) in enumerate(chosen):
            bundle.pieces[(members[index % len(members)], set_id)].append((r, c, L.entry(r, c)))
        logger.debug(f"set '{set_id}': {len(chosen)} cells over {len(members)} participants")

    logger.info(f"dealt order-{L.n} key to {len(A.authorized_sets)} authorized sets")
    return bundle


def reconstruct(pieces: Iterable[Sequence[Cell]], n: int) -> CompletionResult:
    """
    Pool pieces and greedily complete them

    Returns:
        CompletionResult; failure carries the blocking cell
    """
    cells: List[Cell] = [tuple(cell) for piece in pieces for cell in piece]
    return greedy_complete(PartialLatinSquare.from_cells(n, cells))


def audit(L: LatinSquare, A: AccessStructure, B: ShareBundle) -> AuditReport:
    """
    Check every authorized set rebuilds L and report how robust each set is

    Raises:
        AuditError: An authorized set fails to reconstruct L
    """
    if B.n != L.n:
        raise InputError(f"bundle order {B.n} does not match key order {L.n}")
    report = AuditReport(n=L.n, trivially_recoverable=greedy_complete(PartialLatinSquare(L.n)).square == L)
    if report.trivially_recoverable:
        logger.warning(f"order-{L.n} key is the greedy square; any pool recovers it")

    for set_id, members in A.authorized_sets.items():
        held = {p: B.pieces.get((p, set_id), []) for p in members}
        try:
            outcome = reconstruct(held.values(), L.n)
        except InputError as e:
            raise AuditError(set_id, str(e))
        if not (outcome.success and outcome.square == L):
            detail = f"blocked at {outcome.failed_cell}" if not outcome.success else "completed to a different square"
            raise AuditError(set_id, detail)

        entry = SetAudit(
            set_id=set_id,
            members=members,
            size=sum(len(cells) for cells in held.values()),
            reconstructs=True,
        )
        if len(members) >= 2:
            for dropped in members:
                rest = [cells for p, cells in held.items() if p != dropped]
                again = reconstruct(rest, L.n)
                entry.survives_dropout[dropped] = again.success and again.square == L
        report.sets.append(entry)

    return report

