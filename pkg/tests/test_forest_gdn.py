"""
Tests for leaf peeling on trees and forests
"""

import random
import time

import pytest

from exact_solvers import gdn, gdn_fixed
from forest_gdn import TreeInstance, forest_gdn, shift_to_color_one, tree_gdn_fixed
from gds_errors import InputError
from greedy_core import OrderedGraph, is_gds
from tests.helpers import cycle_graph, leaves_first_star, path_graph, random_connected_bipartite, random_tree


class TestTreeInstance:

    def test_rejects_cycle(self):
        with pytest.raises(InputError):
            TreeInstance(cycle_graph(4), {1: 1, 2: 2, 3: 1, 4: 2})

    def test_rejects_third_color(self):
        with pytest.raises(InputError):
            TreeInstance(path_graph(3), {1: 1, 2: 3, 3: 1})

    def test_root_color(self):
        inst = TreeInstance.from_root_color(path_graph(3, [2, 1, 3]), root_color=1)
        assert inst.coloring == {1: 2, 2: 1, 3: 2}

    def test_single_vertex_is_color_one(self):
        inst = TreeInstance.from_root_color(OrderedGraph(1, []), root_color=2)
        assert inst.coloring == {1: 1}


class TestTreeGdnFixed:

    def test_path_reversed_colors(self):
        result = tree_gdn_fixed(TreeInstance(path_graph(3), {1: 2, 2: 1, 3: 2}))
        assert result.size == 1
        assert result.witness == {2: 1}

    def test_star_leaves_first(self):
        tree = OrderedGraph(4, leaves_first_star())
        result = tree_gdn_fixed(TreeInstance(tree, {1: 2, 2: 2, 3: 2, 4: 1}))
        assert result.size == 1
        assert result.witness == {4: 1}

    def test_no_heads(self):
        result = tree_gdn_fixed(TreeInstance(path_graph(4), {1: 1, 2: 2, 3: 1, 4: 2}))
        assert result.size == 0

    def test_matches_exact_fixed(self):
        rng = random.Random(8)
        for _ in range(200):
            tree = random_tree(rng, rng.randint(1, 12))
            inst = TreeInstance.from_root_color(tree, rng.choice([1, 2]))
            result = tree_gdn_fixed(inst)
            assert result.size == gdn_fixed(tree, inst.coloring).size
            assert is_gds(tree, result.witness, target=inst.coloring)

    @pytest.mark.slow
    def test_large_tree_with_fixed_coloring_is_fast(self):
        rng = random.Random(1)
        tree = random_tree(rng, 100_000)
        inst = TreeInstance.from_root_color(tree, 2)
        started = time.perf_counter()
        tree_gdn_fixed(inst)
        assert time.perf_counter() - started < 1.0


class TestForestGdn:

    def test_single_vertex(self):
        assert forest_gdn(OrderedGraph(1, [])).size == 0

    def test_path_identity(self):
        assert forest_gdn(path_graph(3)).size == 0

    def test_two_badly_ordered_paths(self):
        # on each path the greedy run reaches color 3 when the order is v1, v4, v2, v3
        edges = [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8)]
        forest = OrderedGraph(8, edges, [1, 4, 2, 3, 5, 8, 6, 7])
        result = forest_gdn(forest)
        assert result.size == 2
        assert is_gds(forest, result.witness)

    def test_two_leaves_first_stars_need_nothing(self):
        forest = OrderedGraph(8, leaves_first_star() + leaves_first_star(offset=4))
        assert forest_gdn(forest).size == 0

    def test_rejects_cycle(self):
        with pytest.raises(InputError):
            forest_gdn(cycle_graph(3))

    def test_rejects_cycle_next_to_a_tree(self):
        edges = [(1, 2), (2, 3), (3, 1), (4, 5)]
        with pytest.raises(InputError):
            forest_gdn(OrderedGraph(6, edges))

    def test_isolated_vertices_cost_nothing(self):
        forest = OrderedGraph(6, [(1, 2), (2, 3), (3, 4)], [1, 4, 2, 3, 5, 6])
        assert forest_gdn(forest).size == 1

    @pytest.mark.slow
    def test_large_tree_is_fast(self):
        rng = random.Random(1)
        tree = random_tree(rng, 100_000)
        started = time.perf_counter()
        result = forest_gdn(tree)
        assert time.perf_counter() - started < 1.0
        assert result.size == len(result.witness)

    @pytest.mark.slow
    def test_matches_exact_gdn(self):
        rng = random.Random(77)
        mismatches = []
        for _ in range(300):
            tree = random_tree(rng, rng.randint(1, 12))
            result = forest_gdn(tree)
            if result.size != gdn(tree).size or not is_gds(tree, result.witness):
                mismatches.append(tree)
        assert mismatches == []

    def test_random_forests(self):
        rng = random.Random(3)
        for _ in range(50):
            a, b = random_tree(rng, rng.randint(1, 6)), random_tree(rng, rng.randint(1, 6))
            edges = list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges]
            order = list(a.order) + [v + a.n for v in b.order]
            rng.shuffle(order)
            forest = OrderedGraph(a.n + b.n, edges, order)
            assert forest_gdn(forest).size == gdn(forest).size


class TestShiftToColorOne:

    def test_moves_head_to_neighbor(self):
        G = path_graph(3)
        C = {1: 2, 2: 1, 3: 2}
        shifted = shift_to_color_one(G, C, {1: 2})
        assert all(C[v] == 1 for v in shifted)
        assert len(shifted) <= 1
        assert is_gds(G, shifted, target=C)

    def test_random_trees(self):
        rng = random.Random(21)
        for _ in range(60):
            tree = random_tree(rng, rng.randint(2, 10))
            inst = TreeInstance.from_root_color(tree, rng.choice([1, 2]))
            S = dict(gdn_fixed(tree, inst.coloring).witness)
            # pad with a color-2 vertex when one exists
            extra = next((v for v in tree.vertices if inst.coloring[v] == 2 and v not in S), None)
            if extra is not None:
                S[extra] = 2
            shifted = shift_to_color_one(tree, inst.coloring, S)
            assert len(shifted) <= len(S)
            assert all(inst.coloring[v] == 1 for v in shifted)
            assert is_gds(tree, shifted, target=inst.coloring)

    def test_rejects_non_defining_set(self):
        with pytest.raises(InputError):
            shift_to_color_one(path_graph(3), {1: 2, 2: 1, 3: 2}, {})

    @pytest.mark.slow
    def test_connected_bipartite_graphs(self):
        rng = random.Random(29)
        failures = []
        for _ in range(200):
            G, coloring = random_connected_bipartite(rng, rng.randint(2, 9), rng.choice([0.1, 0.3, 0.5]))
            for C in (coloring, {v: 3 - c for v, c in coloring.items()}):
                S = dict(gdn_fixed(G, C).witness)
                S.update({v: 2 for v in G.vertices if C[v] == 2 and rng.random() < 0.3})
                shifted = shift_to_color_one(G, C, S)
                if (len(shifted) > len(S) or any(C[v] != 1 for v in shifted)
                        or not is_gds(G, shifted, target=C)):
                    failures.append((G, C))
        assert failures == []
