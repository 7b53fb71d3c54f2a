import pytest

from cliquedec import InfeasibleError
from cliquedec.decomposition import Profile
from cliquedec.enumerator import (
    count_all,
    count_exact_cover,
    enumerate_stream,
    iter_decompositions,
)
from cliquedec.exact_cover import count_exact_covers

# Totals for n = 1..6, fixed by agreement of the canonical recursion and the
# independent exact-cover oracle (n = 3, 4 also verified by hand).
KNOWN_TOTALS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 32, 6: 353}


class TestCountAll:
    @pytest.mark.parametrize("n,expected", sorted(KNOWN_TOTALS.items()))
    def test_known_totals(self, n, expected):
        assert count_all(n).total == expected

    @pytest.mark.parametrize("n", range(1, 8))
    def test_methods_agree(self, n):
        assert count_all(n).total == count_exact_cover(n)

    def test_total_is_profile_sum(self):
        result = count_all(6)
        assert result.total == sum(result.by_profile.values())

    @pytest.mark.parametrize("n", range(2, 7))
    def test_all_two_cliques_profile_unique(self, n, L=11):
        result = count_all(n, L)
        s = tuple(
            n * (n - 1) // 2 if k == 2 else 0 for k in range(2, L + 1)
        )
        assert result.by_profile[Profile(L, s, 0)] == 1

    @pytest.mark.parametrize("n", range(3, 7))
    def test_single_n_clique_profile_unique(self, n, L=11):
        result = count_all(n, L)
        s = tuple(1 if k == n else 0 for k in range(2, L + 1))
        assert result.by_profile[Profile(L, s, 0)] == 1

    def test_monotone_in_n(self):
        totals = [count_all(n).total for n in range(2, 7)]
        assert all(a < b for a, b in zip(totals, totals[1:]))

    def test_cutoff_moves_large_parts_into_oversized(self):
        low = count_all(6, L=4)
        assert low.total == KNOWN_TOTALS[6]
        oversized = {p: c for p, c in low.by_profile.items() if p.oversized_edges}
        assert oversized  # 5- and 6-cliques no longer fit in the vector
        for p in low.by_profile:
            assert p.covered_edges() == 15

    def test_cap_refusal(self):
        with pytest.raises(InfeasibleError):
            count_all(8)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            count_all(0)

    def test_parallel_matches_sequential(self):
        seq = count_all(5)
        par = count_all(5, workers=2)
        assert par.total == seq.total
        assert par.by_profile == seq.by_profile


class TestStream:
    def test_k2_single_decomposition(self):
        seen = []
        assert enumerate_stream(2, seen.append) == 1
        assert seen[0].cliques == ((0, 1),)

    def test_k3_two_decompositions(self):
        seen = []
        assert enumerate_stream(3, seen.append) == 2
        assert {d.cliques for d in seen} == {
            ((0, 1), (0, 2), (1, 2)),
            ((0, 1, 2),),
        }

    @pytest.mark.parametrize("n", range(1, 6))
    def test_streams_are_valid_distinct_and_complete(self, n):
        seen = set()
        for d in iter_decompositions(n):
            assert d.validate() == []
            canon = d.canonical().cliques
            assert canon == d.cliques  # emitted already canonical
            assert canon not in seen
            seen.add(canon)
        assert len(seen) == KNOWN_TOTALS[n]

    def test_visitor_abort_propagates(self):
        class Stop(Exception):
            pass

        def visitor(_):
            raise Stop

        with pytest.raises(Stop):
            enumerate_stream(4, visitor)

    def test_deterministic_order(self):
        first = [d.cliques for d in iter_decompositions(4)]
        second = [d.cliques for d in iter_decompositions(4)]
        assert first == second
        assert first[0] == tuple(sorted([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))


class TestExactCover:
    def test_empty_universe(self):
        assert count_exact_covers(0, []) == 1

    def test_tiny_instance(self):
        # universe {0,1,2}; covers: {01, 2} and {0, 12}
        rows = [0b011, 0b100, 0b001, 0b110]
        assert count_exact_covers(3, rows) == 2

    def test_unsolvable(self):
        assert count_exact_covers(2, [0b11, 0b11]) == 2  # two identical rows
        assert count_exact_covers(2, [0b01]) == 0

    def test_empty_row_rejected(self):
        with pytest.raises(ValueError):
            count_exact_covers(2, [0])

    def test_row_outside_universe_rejected(self):
        with pytest.raises(ValueError):
            count_exact_covers(2, [0b100])

    def test_oracle_cap(self):
        with pytest.raises(InfeasibleError):
            count_exact_cover(8)
