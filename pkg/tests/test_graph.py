import math
from itertools import combinations

import pytest

from cliquedec.graph import DenseGraph, is_typical
from oracles import brute_force_clique_count, random_graph


def k6_minus_perfect_matching() -> DenseGraph:
    g = DenseGraph.complete(6)
    for u, v in ((0, 1), (2, 3), (4, 5)):
        g.remove_clique_edges((u, v))
    return g


def five_cycle() -> DenseGraph:
    return DenseGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


class TestCommonNeighborhood:
    def test_complete_graph(self):
        assert DenseGraph.complete(5).common_neighborhood((0, 1)) == (2, 3, 4)

    def test_empty_graph(self):
        assert DenseGraph.empty(5).common_neighborhood((0,)) == ()

    def test_five_cycle(self):
        assert five_cycle().common_neighborhood((0, 2)) == (1,)

    def test_empty_query_rejected(self):
        with pytest.raises(ValueError):
            DenseGraph.complete(4).common_neighborhood(())

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            DenseGraph.complete(4).common_neighborhood((0, 7))

    @pytest.mark.parametrize("seed", range(6))
    def test_monotone_under_inclusion(self, seed):
        g = random_graph(9, 0.6, seed)
        sizes = []
        for take in range(1, 5):
            sizes.append(g.common_neighborhood_mask(range(take)).bit_count())
        assert sizes == sorted(sizes, reverse=True)


class TestCliqueCounting:
    def test_complete_graph_triangles(self):
        assert DenseGraph.complete(5).count_cliques(3) == 10
        assert DenseGraph.complete(6).count_cliques(3) == 20

    def test_cycle_has_no_triangles(self):
        assert five_cycle().count_cliques(3) == 0

    def test_matching_complement(self):
        assert k6_minus_perfect_matching().count_cliques(3) == 8

    def test_small_sizes(self):
        g = k6_minus_perfect_matching()
        assert g.count_cliques(1) == 6
        assert g.count_cliques(2) == g.m == 12

    def test_oversized_is_zero(self):
        assert DenseGraph.complete(4).count_cliques(5) == 0

    def test_invalid_size(self):
        with pytest.raises(ValueError):
            DenseGraph.complete(4).count_cliques(0)

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_matches_brute_force(self, n, seed):
        g = random_graph(n, 0.55, seed * 31 + n)
        for k in range(1, n + 1):
            assert g.count_cliques(k) == brute_force_clique_count(g, k)

    def test_iter_cliques_consistent(self):
        g = random_graph(7, 0.6, 3)
        for k in (2, 3, 4):
            cliques = list(g.iter_cliques(k))
            assert len(cliques) == g.count_cliques(k)
            assert len(set(cliques)) == len(cliques)
            for c in cliques:
                assert all(g.has_edge(u, v) for u, v in combinations(c, 2))


class TestRemoveCliqueEdges:
    def test_remove_whole_k4(self):
        g = DenseGraph.complete(4)
        g.remove_clique_edges((0, 1, 2, 3))
        assert g == DenseGraph.empty(4)

    def test_remove_triangle_leaves_star(self):
        g = DenseGraph.complete(4)
        g.remove_clique_edges((0, 1, 2))
        assert sorted(g.edges()) == [(0, 3), (1, 3), (2, 3)]

    def test_remove_edge(self):
        g = DenseGraph.complete(5)
        g.remove_clique_edges((0, 1))
        assert g.m == 9

    def test_missing_edge_rejected_without_mutation(self):
        g = five_cycle()
        before = g.copy()
        with pytest.raises(ValueError):
            g.remove_clique_edges((0, 1, 2))
        assert g == before

    @pytest.mark.parametrize("seed", range(5))
    def test_edge_count_ledger(self, seed):
        g = random_graph(8, 0.7, seed + 100)
        for k in (2, 3, 4):
            cliques = list(g.iter_cliques(k))
            if not cliques:
                continue
            before = g.m
            g.remove_clique_edges(cliques[seed % len(cliques)])
            assert g.m == before - k * (k - 1) // 2


class TestTypicality:
    def test_complete_graph_is_typical(self):
        for n, h in ((8, 1), (8, 3), (12, 2)):
            report = is_typical(DenseGraph.complete(n), epsilon=h / n, h=h)
            assert report.passed
            assert report.worst_relative_deviation == pytest.approx(h / n)

    def test_empty_graph_is_typical(self):
        report = is_typical(DenseGraph.empty(7), epsilon=0.1, h=2)
        assert report.passed
        assert report.worst_relative_deviation == 0.0

    def test_matching_complement_degrees(self):
        # every degree is 4 against a prediction of (4/5) * 6
        report = is_typical(k6_minus_perfect_matching(), epsilon=0.5, h=1)
        assert report.passed
        assert report.worst_relative_deviation == pytest.approx(1 / 6)

    def test_infinite_epsilon_always_passes(self):
        for seed in range(4):
            g = random_graph(10, 0.5, seed)
            assert is_typical(g, epsilon=math.inf, h=3, mode="exhaustive").passed

    def test_zero_epsilon_only_exact(self):
        assert is_typical(DenseGraph.empty(6), epsilon=0.0, h=2).passed
        assert not is_typical(k6_minus_perfect_matching(), epsilon=0.0, h=1).passed

    def test_h_larger_than_n_rejected(self):
        with pytest.raises(ValueError):
            is_typical(DenseGraph.complete(4), epsilon=0.5, h=5)

    def test_sampled_mode_deterministic(self):
        g = random_graph(40, 0.5, 9)
        a = is_typical(g, 0.5, 2, mode="sampled", k_samples=50, seed=4)
        b = is_typical(g, 0.5, 2, mode="sampled", k_samples=50, seed=4)
        assert a == b
        assert a.sets_checked == 100

    def test_auto_mode_picks_exhaustive_when_small(self):
        g = DenseGraph.complete(10)
        report = is_typical(g, 0.5, 2)
        assert report.sets_checked == 10 + 45  # all sets of size 1 and 2


def test_round_trip_edges():
    edges = [(0, 2), (1, 3), (2, 3)]
    g = DenseGraph.from_edges(4, edges)
    assert sorted(g.edges()) == sorted(edges)
    assert g.m == 3
    assert g.density() == pytest.approx(0.5)


def test_vertex_cap():
    with pytest.raises(ValueError):
        DenseGraph.empty(5000)
