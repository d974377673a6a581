"""
Tests for the first-fit engine, descents and defining set checks
"""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from exact_solvers import enumerate_colorings
from gds_errors import CapabilityError, InputError
from greedy_core import (
    Descent, OrderedGraph, check_proper, chromatic_number, find_descents,
    greedy_color, is_gds, is_proper, is_transversal,
)
from latin_squares import to_ordered_instance
from solver_config import set_solver_config, SolverConfig
from tests.helpers import CYCLIC_3, complete_graph, cycle_graph, leaves_first_star, ordered_graphs, path_graph, random_graph


class TestOrderedGraph:

    def test_rejects_self_loop(self):
        with pytest.raises(InputError):
            OrderedGraph(2, [(1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(InputError):
            OrderedGraph(2, [(1, 2), (2, 1)])

    def test_rejects_bad_order(self):
        with pytest.raises(InputError):
            OrderedGraph(3, [], [1, 1, 2])

    def test_rejects_unknown_vertex(self):
        with pytest.raises(InputError):
            OrderedGraph(2, [(1, 3)])

    def test_positions_follow_order(self):
        G = path_graph(3, [3, 1, 2])
        assert G.position == {3: 1, 1: 2, 2: 3}


class TestGreedyColor:

    def test_path_identity_order(self):
        outcome = greedy_color(path_graph(3))
        assert outcome.as_list() == [1, 2, 1]
        assert outcome.max_color == 2
        assert outcome.proper

    def test_later_precolored_neighbor_counts(self):
        outcome = greedy_color(path_graph(2), {2: 1})
        assert outcome.as_list() == [2, 1]

    def test_clique(self):
        assert greedy_color(complete_graph(3)).as_list() == [1, 2, 3]

    def test_cyclic_square_from_one_cell(self):
        G, coloring = to_ordered_instance(CYCLIC_3)
        outcome = greedy_color(G, {5: 3})
        assert outcome.coloring == coloring
        assert outcome.max_color == 3

    def test_conflicting_precoloring_is_improper(self):
        outcome = greedy_color(path_graph(2), {1: 1, 2: 1})
        assert not outcome.proper

    def test_unknown_precolored_vertex(self):
        with pytest.raises(InputError):
            greedy_color(path_graph(2), {5: 1})

    @given(ordered_graphs())
    @settings(max_examples=60, deadline=None)
    def test_output_is_proper_and_deterministic(self, G):
        first = greedy_color(G)
        assert first.proper
        assert is_proper(G, first.coloring)
        assert greedy_color(G).coloring == first.coloring

    @given(ordered_graphs(min_vertices=2))
    @settings(max_examples=60, deadline=None)
    def test_precolored_vertices_keep_their_colors(self, G):
        base = greedy_color(G).coloring
        S = {v: base[v] for v in G.order[::2]}
        assert {v: greedy_color(G, S).coloring[v] for v in S} == S


class TestChromaticNumber:

    @pytest.mark.parametrize("G,expected", [
        (path_graph(3), 2),
        (complete_graph(4), 4),
        (cycle_graph(5), 3),
        (OrderedGraph(3, []), 1),
        (OrderedGraph(0, []), 0),
    ])
    def test_small_graphs(self, G, expected):
        assert chromatic_number(G) == expected

    def test_guard_applies_to_backtracking_only(self, monkeypatch):
        monkeypatch.setenv('GDS_CHROMATIC_MAX_VERTICES', '4')
        set_solver_config(SolverConfig())
        assert chromatic_number(path_graph(10)) == 2
        with pytest.raises(CapabilityError):
            chromatic_number(cycle_graph(5))


class TestDescents:

    def test_no_descents_for_greedy_coloring(self):
        assert find_descents(path_graph(3), {1: 1, 2: 2, 3: 1}) == []

    def test_path_reversed_colors(self):
        descents = find_descents(path_graph(3), {1: 2, 2: 1, 3: 2})
        assert descents == [Descent(head=1, tail=frozenset({2}), low_color=1, high_color=2)]

    def test_singleton_descent(self):
        G = OrderedGraph(3, [(1, 2)])
        descents = find_descents(G, {1: 1, 2: 2, 3: 2})
        assert Descent(head=3, tail=frozenset(), low_color=1, high_color=2) in descents

    def test_star_leaves_first(self):
        G = OrderedGraph(4, leaves_first_star())
        descents = find_descents(G, {1: 2, 2: 2, 3: 2, 4: 1})
        assert [d.vertices for d in descents] == [frozenset({v, 4}) for v in (1, 2, 3)]

    def test_improper_coloring_rejected(self):
        with pytest.raises(InputError):
            find_descents(path_graph(2), {1: 1, 2: 1})

    def test_check_proper_reports_missing(self):
        with pytest.raises(InputError, match="misses"):
            check_proper(path_graph(3), {1: 1, 2: 2})

    def test_transversal(self):
        d = [Descent(head=1, tail=frozenset({2}), low_color=1, high_color=2)]
        assert is_transversal(set(), [])
        assert is_transversal({2}, d)
        assert not is_transversal({3}, d)


class TestIsGds:

    def test_empty_set_defines_greedy_coloring(self):
        assert is_gds(path_graph(3), {}, target={1: 1, 2: 2, 3: 1})

    def test_empty_set_cannot_reach_other_coloring(self):
        assert not is_gds(path_graph(2), {}, target={1: 2, 2: 1})

    def test_bad_order_on_even_cycle(self):
        G = cycle_graph(6, [1, 4, 2, 5, 3, 6])
        assert not is_gds(G, {})

    def test_disagreement_with_target(self):
        with pytest.raises(InputError):
            is_gds(path_graph(2), {1: 1}, target={1: 2, 2: 1})

    def test_colors_above_chromatic_number_fail(self):
        assert not is_gds(path_graph(2), {1: 3})


def _sample_coloring(rng, G):
    colorings = list(enumerate_colorings(G, chromatic_number(G)))
    return rng.choice(colorings)


class TestDescentTransversalEquivalence:

    @pytest.mark.slow
    def test_random_graphs(self):
        rng = random.Random(2024)
        mismatches = []
        for _ in range(500):
            G = random_graph(rng, rng.randint(1, 7), rng.choice([0.2, 0.4, 0.6]))
            C = _sample_coloring(rng, G)
            descents = find_descents(G, C)
            for k in range(G.n + 1):
                for subset in combinations(G.vertices, k):
                    S = {v: C[v] for v in subset}
                    if is_gds(G, S, target=C) != is_transversal(subset, descents):
                        mismatches.append((G, C, S))
        assert mismatches == []

    @given(ordered_graphs(max_vertices=6))
    @settings(max_examples=40, deadline=None)
    def test_supersets_of_defining_sets(self, G):
        C = list(enumerate_colorings(G, chromatic_number(G)))[-1]
        descents = find_descents(G, C)
        heads = {d.head for d in descents}
        S = {v: C[v] for v in heads}
        assert is_gds(G, S, target=C)
        extra = next((v for v in G.vertices if v not in S), None)
        if extra is not None:
            assert is_gds(G, {**S, extra: C[extra]}, target=C)
