from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from fordseq.errors import DomainError
from fordseq.geometry import (
    ONE,
    ZERO,
    AffineLine,
    AffineMode,
    HorizontalLine,
    OriginLine,
    ReducedFraction,
    circle_of,
    circles_tangent,
    circles_tangent_geometric,
    distance_to_center_squared,
    line_touches,
    polyline_curve,
    tangent_point,
    touch_mask,
)
from tests.conftest import adjacent_pairs, reduced_fractions


class TestReducedFraction:
    @pytest.mark.parametrize("p,q", [(2, 4), (-1, 2), (3, 2), (1, 0)])
    def test_rejects_invalid(self, p, q):
        with pytest.raises(DomainError):
            ReducedFraction(p, q)

    def test_ordering_and_text(self):
        assert ReducedFraction(1, 3) < ReducedFraction(1, 2) < ONE
        assert ZERO < ReducedFraction(1, 1000)
        assert str(ReducedFraction(9, 14)) == "9/14"
        assert ReducedFraction.parse(" 4/7 ") == ReducedFraction(4, 7)

    @pytest.mark.parametrize("text", ["1.5", "-1/2", "1/", "abc"])
    def test_parse_rejects(self, text):
        with pytest.raises(DomainError):
            ReducedFraction.parse(text)

    @given(reduced_fractions(), reduced_fractions())
    def test_order_matches_value(self, a, b):
        assert (a < b) == (a.value < b.value)


class TestCircles:
    def test_circle_of(self):
        c = circle_of(ReducedFraction(1, 2))
        assert c.center == (Fraction(1, 2), Fraction(1, 8))
        assert c.radius == Fraction(1, 8)

    @given(adjacent_pairs())
    def test_adjacent_circles_are_tangent(self, pair):
        left, right = pair
        assert circles_tangent(left, right)
        assert circles_tangent_geometric(left, right)

    @given(reduced_fractions(), reduced_fractions())
    def test_determinant_and_geometric_tests_agree(self, a, b):
        if a != b:
            assert circles_tangent(a, b) == circles_tangent_geometric(a, b)

    def test_non_adjacent(self):
        assert not circles_tangent(ReducedFraction(4, 7), ReducedFraction(9, 14))

    @given(adjacent_pairs())
    def test_tangent_point_lies_on_both_circles(self, pair):
        left, right = pair
        point = tangent_point(left, right)
        for f in (left, right):
            circle = circle_of(f)
            assert distance_to_center_squared(point, circle) == circle.radius**2

    def test_tangent_point_requires_tangency(self):
        with pytest.raises(DomainError):
            tangent_point(ReducedFraction(4, 7), ReducedFraction(9, 14))


class TestLines:
    @pytest.mark.parametrize("line", [lambda: OriginLine(0), lambda: AffineLine(3, Fraction(1)), lambda: HorizontalLine(Fraction(0))])
    def test_constructors_validate(self, line):
        with pytest.raises(DomainError):
            line()

    def test_origin_boundary_is_exact(self):
        line = OriginLine(6)
        assert line_touches(line, ReducedFraction(2, 3))
        assert line_touches(line, ReducedFraction(1, 6))
        assert not line_touches(line, ReducedFraction(1, 7))
        assert line_touches(line, ZERO)

    @given(reduced_fractions(max_q=300), st.integers(min_value=1, max_value=2000))
    def test_origin_predicate_is_pq_le_m(self, f, m):
        assert line_touches(OriginLine(m), f) == (f.p * f.q <= m)

    def test_horizontal(self):
        line = HorizontalLine(Fraction(1, 9))
        assert line_touches(line, ReducedFraction(1, 3))
        assert not line_touches(line, ReducedFraction(1, 4))

    def test_paper_mode_is_stricter(self):
        # pq + m q^2 b = 11/10 lies between m and (m + sqrt(m^2 + 1)) / 2
        b = Fraction(1, 10)
        assert line_touches(AffineLine(1, b, AffineMode.EXACT), ONE)
        assert not line_touches(AffineLine(1, b, AffineMode.PAPER), ONE)

    def test_affine_misses_low_circles(self):
        line = AffineLine(10**6, Fraction(1, 9))
        assert line_touches(line, ReducedFraction(1, 2))
        assert not line_touches(line, ReducedFraction(1, 3))

    @given(reduced_fractions(max_q=30), st.integers(min_value=1, max_value=100), reduced_fractions(max_q=30))
    def test_paper_mode_implies_exact(self, f, m, b):
        if 0 < b.value < 1:
            if line_touches(AffineLine(m, b.value, AffineMode.PAPER), f):
                assert line_touches(AffineLine(m, b.value, AffineMode.EXACT), f)


class TestTouchMask:
    @given(st.integers(min_value=1, max_value=5000))
    def test_matches_scalar_predicate(self, m):
        q = np.arange(1, 80, dtype=np.int64).repeat(3)
        p = np.tile(np.array([1, 2, 5], dtype=np.int64), 79)
        keep = (p <= q) & (np.gcd(p, q) == 1)
        p, q = p[keep], q[keep]
        expected = [line_touches(OriginLine(m), ReducedFraction(int(a), int(b))) for a, b in zip(p, q, strict=True)]
        assert touch_mask(OriginLine(m), p, q).tolist() == expected

    def test_guards_int64(self):
        with pytest.raises(DomainError):
            touch_mask(OriginLine(10**6), np.array([1]), np.array([2]))


class TestPolyline:
    def test_vertex_count(self):
        seq = [ZERO, ReducedFraction(1, 2), ONE]
        vertices = polyline_curve(seq)
        assert len(vertices) == 2 * len(seq) - 1
        assert vertices[0] == circle_of(ZERO).center
        assert vertices[-1] == circle_of(ONE).center

    def test_empty(self):
        assert polyline_curve([]) == []

    def test_reports_offending_index(self):
        seq = [ReducedFraction(1, 2), ReducedFraction(4, 7), ReducedFraction(9, 14)]
        with pytest.raises(DomainError, match="index 1"):
            polyline_curve(seq)
