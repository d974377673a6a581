"""
Tests for dealing, reconstructing and auditing Latin square shares
"""

import random

import pytest

from gds_errors import AuditError, InputError
from latin_squares import PartialLatinSquare, random_latin, verify_latin_gds
from secret_sharing import AccessStructure, audit, deal, derive_set_seed, reconstruct
from tests.helpers import CYCLIC_3, ORDER_2


def _union(bundle, set_id):
    return [cell for cells in bundle.pieces_for(set_id).values() for cell in cells]


def _random_access_structure(rng: random.Random) -> AccessStructure:
    participants = [f"p{i}" for i in range(1, 6)]
    sets = {}
    for k in range(rng.randint(1, 4)):
        sets[f"s{k}"] = rng.sample(participants, rng.randint(1, 3))
    return AccessStructure(participants, sets)


class TestAccessStructure:

    def test_empty_set_rejected(self):
        with pytest.raises(InputError):
            AccessStructure(["p1"], {"a": []})

    def test_unknown_member_rejected(self):
        with pytest.raises(InputError):
            AccessStructure(["p1"], {"a": ["p2"]})

    def test_members_sorted(self):
        A = AccessStructure(["b", "a"], {"s": ["b", "a"]})
        assert A.authorized_sets["s"] == ("a", "b")


class TestDeal:

    def test_single_participant_gets_a_defining_set(self):
        bundle = deal(CYCLIC_3, AccessStructure(["p1"], {"s": ["p1"]}), seed=0)
        cells = bundle.pieces[("p1", "s")]
        assert len(cells) == 1
        assert verify_latin_gds(CYCLIC_3, PartialLatinSquare.from_cells(3, cells))

    def test_two_participants_get_one_cell_each(self):
        bundle = deal(CYCLIC_3, AccessStructure(["p1", "p2"], {"s": ["p1", "p2"]}), seed=0)
        assert len(bundle.pieces[("p1", "s")]) == 1
        assert len(bundle.pieces[("p2", "s")]) == 1
        assert verify_latin_gds(CYCLIC_3, PartialLatinSquare.from_cells(3, _union(bundle, "s")))

    def test_order_two_is_padded(self):
        bundle = deal(ORDER_2, AccessStructure(["p1", "p2"], {"s": ["p1", "p2"]}), seed=5)
        assert _union(bundle, "s") == [(1, 1, 1), (1, 2, 2)]
        assert reconstruct(bundle.pieces_for("s").values(), 2).square == ORDER_2

    def test_deterministic(self):
        L = random_latin(5, 12)
        A = AccessStructure(["a", "b", "c"], {"x": ["a", "b"], "y": ["b", "c"], "z": ["c"]})
        assert deal(L, A, seed=3) == deal(L, A, seed=3)

    def test_set_seeds_differ(self):
        assert derive_set_seed(0, "a") != derive_set_seed(0, "b")
        assert derive_set_seed(0, "a") == derive_set_seed(0, "a")

    def test_pieces_are_disjoint(self):
        L = random_latin(6, 2)
        bundle = deal(L, AccessStructure(["a", "b", "c"], {"s": ["a", "b", "c"]}), seed=1)
        pieces = list(bundle.pieces_for("s").values())
        seen = set()
        for cells in pieces:
            assert seen.isdisjoint(cells)
            seen |= set(cells)


class TestReconstruct:

    def test_full_defining_set(self):
        assert reconstruct([[(2, 2, 3)]], 3).square == CYCLIC_3

    def test_padding_cell_alone_fails(self):
        result = reconstruct([[(1, 1, 1)]], 3)
        assert not result.success
        assert result.failed_cell == (2, 3)

    def test_empty_pool_of_order_two(self):
        assert reconstruct([], 2).square == ORDER_2

    def test_conflicting_cells(self):
        with pytest.raises(InputError):
            reconstruct([[(1, 1, 1)], [(1, 2, 1)]], 3)


class TestAudit:

    def test_all_sets_reconstruct(self):
        A = AccessStructure(["p1", "p2"], {"s": ["p1", "p2"]})
        report = audit(CYCLIC_3, A, deal(CYCLIC_3, A, seed=0))
        assert report.sizes == [2]
        assert not report.trivially_recoverable

    def test_missing_piece_fails_or_leaks(self):
        A = AccessStructure(["p1", "p2"], {"s": ["p1", "p2"]})
        bundle = deal(CYCLIC_3, A, seed=0)
        report = audit(CYCLIC_3, A, bundle)
        leaked = report.sets[0].survives_dropout
        for dropped in ("p1", "p2"):
            bundle_copy = deal(CYCLIC_3, A, seed=0)
            bundle_copy.pieces[(dropped, "s")] = []
            if leaked[dropped]:
                assert audit(CYCLIC_3, A, bundle_copy).sizes == [1]
            else:
                with pytest.raises(AuditError):
                    audit(CYCLIC_3, A, bundle_copy)

    def test_order_two_is_trivially_recoverable(self):
        A = AccessStructure(["p1"], {"s": ["p1"]})
        report = audit(ORDER_2, A, deal(ORDER_2, A, seed=0))
        assert report.trivially_recoverable
        assert report.sizes == [1]

    @pytest.mark.slow
    def test_round_trip(self):
        rng = random.Random(50)
        for _ in range(50):
            L = random_latin(rng.randint(1, 8), rng.randint(0, 10 ** 9))
            A = _random_access_structure(rng)
            seed = rng.randint(0, 1000)
            bundle = deal(L, A, seed)
            assert deal(L, A, seed) == bundle
            for set_id in A.authorized_sets:
                assert reconstruct(bundle.pieces_for(set_id).values(), L.n).square == L
            audit(L, A, bundle)
