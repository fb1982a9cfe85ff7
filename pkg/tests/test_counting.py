import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given
from sympy import primenu

from fordseq import arith, counting, sequences
from fordseq.arith import SieveTables
from fordseq.constants import SIEVE_LIMIT_ENV_VAR
from fordseq.errors import DomainError, InconsistencyError, ResourceLimitError


class TestJump:
    @pytest.mark.parametrize(
        "m,omega,s_m", [(1, 0, 1), (2, 1, 1), (6, 2, 2), (30, 3, 4), (210, 4, 8), (64, 1, 1), (2310, 5, 16)]
    )
    def test_values(self, small_sieves, m, omega, s_m):
        record = counting.jump(m, small_sieves)
        assert (record.m, record.omega_m, record.s_m) == (m, omega, s_m)

    @given(st.integers(min_value=2, max_value=10**5))
    def test_matches_coprime_factor_pairs(self, m):
        assert counting.jump(m).s_m == len(arith.coprime_factor_pairs(m)) == 2 ** (primenu(m) - 1)

    def test_beyond_sieve(self, small_sieves):
        m = 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23
        assert counting.jump(m, small_sieves).s_m == 2**8

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            counting.jump(0)


class TestCardinality:
    @pytest.mark.parametrize("method", ["exact", "mobius", "brute", "columns"])
    def test_m_32(self, small_sieves, method):
        assert counting.cardinality(32, method, small_sieves) == 48

    @pytest.mark.parametrize("m,expected", [(1, 2), (2, 3), (3, 4), (6, 8)])
    def test_small_m(self, small_sieves, m, expected):
        assert counting.cardinality_exact(m, small_sieves) == expected
        assert counting.cardinality_mobius(m, small_sieves) == expected

    @given(st.integers(min_value=1, max_value=10**4))
    def test_formulas_agree(self, small_sieves, m):
        exact = counting.cardinality_exact(m, small_sieves)
        assert counting.cardinality_mobius(m, small_sieves) == exact
        assert counting.cardinality_columns(m, small_sieves) == exact

    @given(st.integers(min_value=1, max_value=1500))
    def test_formulas_match_extraction(self, small_sieves, m):
        assert counting.cardinality_exact(m, small_sieves) == counting.cardinality_brute(m)

    def test_beyond_sieve_limit(self, small_sieves):
        m = small_sieves.limit + 500
        assert counting.cardinality_exact(m, small_sieves) == counting.cardinality_mobius(m, small_sieves)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            counting.cardinality(32, "guess")

    @pytest.mark.parametrize("method", ["exact", "mobius", "brute", "columns"])
    def test_rejects_zero(self, method):
        with pytest.raises(DomainError):
            counting.cardinality(0, method)


class TestColumns:
    def test_columns_of_m_32(self, small_sieves):
        assert [counting.column_count(32, p, small_sieves) for p in range(1, 6)] == [32, 7, 5, 2, 1]

    def test_empty_column(self, small_sieves):
        assert counting.column_count(32, 6, small_sieves) == 0


class TestS:
    @pytest.mark.parametrize("m,s", [(2, 1), (5, 1), (6, 2), (11, 2), (12, 3), (32, 5), (42, 6)])
    def test_values(self, m, s):
        assert counting.s_of(m) == s

    @given(st.integers(min_value=2, max_value=10**12))
    def test_defining_inequality(self, m):
        s = counting.s_of(m)
        assert s * (s + 1) <= m < (s + 1) * (s + 2)

    @given(st.integers(min_value=2, max_value=3000))
    def test_largest_numerator(self, m):
        assert counting.s_of(m) == max(f.p for f in sequences.extract_origin(m).fractions)

    def test_rejects_one(self):
        with pytest.raises(DomainError):
            counting.s_of(1)


class TestLattice:
    def test_m_32(self):
        region = counting.lattice_region_count(32)
        assert region.s == 5
        assert region.visible_points == 47
        assert region.total_points == 32 + 15 + 8 + 5 + 2

    @given(st.integers(min_value=2, max_value=2000))
    def test_visible_points_are_fractions_without_zero(self, small_sieves, m):
        assert counting.lattice_region_count(m).visible_points == counting.cardinality_exact(m, small_sieves) - 1

    def test_visible_ratio_near_six_over_pi_squared(self, small_sieves):
        assert abs(counting.visible_ratio(1000, small_sieves) - 6 / math.pi**2) < 0.002

    def test_visible_count_small(self, small_sieves):
        brute = sum(1 for x in range(1, 31) for y in range(1, 31) if math.gcd(x, y) == 1)
        assert counting.visible_count(30, small_sieves) == brute


class TestJumpTable:
    def test_rows_2_to_6(self, small_sieves):
        rows = counting.jump_table(2, 6, small_sieves)
        assert [row[:3] for row in rows] == [(2, 1, 1), (3, 1, 1), (4, 1, 1), (5, 1, 1), (6, 2, 2)]
        assert [row[3] for row in rows] == [3, 4, 5, 6, 8]

    @given(st.integers(min_value=1, max_value=3000), st.integers(min_value=0, max_value=300))
    def test_cumulative_cardinality(self, small_sieves, start, length):
        for record, card in counting.iter_jumps(start, start + length, small_sieves):
            assert card == counting.cardinality_exact(record.m, small_sieves)

    def test_empty_range(self):
        with pytest.raises(DomainError):
            counting.jump_table(10, 2)


class TestColumnSum:
    @pytest.mark.parametrize("m,expected", [(2, 3), (3, 4), (4, 5), (5, 6), (6, 8), (30, 46), (32, 48)])
    def test_small_m(self, small_sieves, m, expected):
        assert counting.cardinality_columns(m, small_sieves) == expected

    def test_columns_hold_every_fraction_but_zero(self, small_sieves):
        m = 32
        columns = sum(counting.column_count(m, p, small_sieves) for p in range(1, counting.s_of(m) + 1))
        assert columns == counting.cardinality_brute(m) - 1


class TestSegmentedCounting:
    @pytest.fixture
    def tiny_sieves(self) -> SieveTables:
        return arith.build_sieves(1000)

    @pytest.fixture
    def reference(self) -> np.ndarray:
        return counting.cardinality_table(60000, arith.build_sieves(60000))

    @pytest.mark.parametrize("m", [999, 1000, 1001, 4321, 10**4, 59999])
    def test_matches_full_table(self, tiny_sieves, reference, m):
        assert counting.cardinality_exact(m, tiny_sieves) == reference[m]
        assert counting.cardinality_mobius(m, tiny_sieves) == reference[m]

    def test_many_small_segments(self, tiny_sieves, reference, monkeypatch):
        monkeypatch.setattr(arith, "MIN_SEGMENT_SIZE", 777)
        assert counting.cardinality_exact(59999, tiny_sieves) == reference[59999]
        assert counting.cardinality_mobius(59999, tiny_sieves) == reference[59999]
        assert counting.visible_count(5000, tiny_sieves) == counting.visible_count(5000, arith.build_sieves(5000))

    def test_m_past_sieve_budget(self, tiny_sieves, monkeypatch):
        monkeypatch.setattr(arith, "MAX_SIEVE_LIMIT", 2000)
        with pytest.raises(ResourceLimitError):
            arith.build_sieves(50000)
        m = 50000
        assert counting.cardinality_exact(m, tiny_sieves) == counting.cardinality_mobius(m, tiny_sieves)
        assert counting.cardinality_columns(m, tiny_sieves) == counting.cardinality_exact(m, tiny_sieves)

    def test_small_configured_limit(self, monkeypatch):
        monkeypatch.setenv(SIEVE_LIMIT_ENV_VAR, "1000")
        m = 3 * 10**5
        exact = counting.cardinality_exact(m)
        assert arith.default_sieves().limit == 1000
        assert exact == counting.cardinality_mobius(m)
        assert exact == counting.cardinality_table(m, arith.build_sieves(m))[m]


class TestCardinalityTable:
    def test_prefix(self, small_sieves):
        assert counting.cardinality_table(6, small_sieves).tolist() == [0, 2, 3, 4, 5, 6, 8]

    def test_counts_coprime_pairs_below_hyperbola(self, small_sieves):
        limit = 10**4
        products = []
        for p in range(1, math.isqrt(limit) + 1):
            q = np.arange(p, limit // p + 1, dtype=np.int64)
            products.append((p * q)[np.gcd(q, p) == 1])
        expected = np.cumsum(np.bincount(np.concatenate(products), minlength=limit + 1)) + 1
        table = counting.cardinality_table(limit, small_sieves)
        assert np.array_equal(table[1:], expected[1:])

    def test_every_m_agrees_with_mobius_form(self, small_sieves):
        table = counting.cardinality_table(10**4, small_sieves)
        assert all(counting.cardinality_mobius(m, small_sieves) == table[m] for m in range(1, 10**4 + 1))

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            counting.cardinality_table(0)


class TestJumpsExhaustive:
    @pytest.fixture(scope="class")
    def sieves(self) -> SieveTables:
        return arith.build_sieves(10**5)

    def test_jumps_are_half_the_squarefree_divisors(self, sieves):
        counts = arith.squarefree_divisor_counts(10**5, sieves)
        for record, _ in counting.iter_jumps(2, 10**5, sieves):
            assert 2 * record.s_m == counts[record.m]

    def test_jumps_count_coprime_factor_pairs(self, sieves):
        for record, _ in counting.iter_jumps(2, 2 * 10**4, sieves):
            assert record.s_m == len(arith.coprime_factor_pairs(record.m))

    def test_cumulative_total_at_end(self, sieves):
        *_, (record, total) = counting.iter_jumps(1, 10**5, sieves)
        assert record.m == 10**5
        assert total == counting.cardinality_exact(10**5, sieves) == counting.cardinality_mobius(10**5, sieves)


def test_odd_squarefree_count_is_inconsistent(small_sieves):
    mu = small_sieves.mu.copy()
    mu[4] = 1
    corrupt = SieveTables(limit=small_sieves.limit, phi=small_sieves.phi, mu=mu, omega=small_sieves.omega, spf=small_sieves.spf)
    with pytest.raises(InconsistencyError) as raised:
        counting.cardinality_mobius(4, corrupt)
    assert isinstance(raised.value, RuntimeError)
    assert not isinstance(raised.value, DomainError)
