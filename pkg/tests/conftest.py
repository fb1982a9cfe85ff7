import math

import hypothesis.strategies as st
import pytest
from hypothesis import settings

from fordseq.arith import SieveTables, build_sieves
from fordseq.geometry import ReducedFraction

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

SMALL_LIMIT = 10**4

F_32 = (
    "0/1, 1/32, 1/31, 1/30, 1/29, 1/28, 1/27, 1/26, 1/25, 1/24, 1/23, 1/22, 1/21, 1/20, 1/19, 1/18, 1/17, "
    "1/16, 1/15, 1/14, 1/13, 1/12, 1/11, 1/10, 1/9, 1/8, 2/15, 1/7, 2/13, 1/6, 2/11, 1/5, 2/9, 1/4, 2/7, "
    "3/10, 1/3, 3/8, 2/5, 3/7, 1/2, 4/7, 3/5, 2/3, 3/4, 4/5, 5/6, 1/1"
)


@pytest.fixture(scope="session")
def small_sieves() -> SieveTables:
    return build_sieves(SMALL_LIMIT)


@pytest.fixture
def golden_f32() -> list[ReducedFraction]:
    return [ReducedFraction.parse(token) for token in F_32.split(", ")]


@st.composite
def reduced_fractions(draw, max_q: int = 200) -> ReducedFraction:
    q = draw(st.integers(min_value=1, max_value=max_q))
    p = draw(st.integers(min_value=0, max_value=q))
    g = math.gcd(p, q)
    return ReducedFraction(p // g, q // g)


@st.composite
def adjacent_pairs(draw, max_q: int = 500) -> tuple[ReducedFraction, ReducedFraction]:
    """Consecutive terms of a Farey sequence, found by the next-term step from a random fraction."""
    left = draw(reduced_fractions(max_q=max_q).filter(lambda f: f.p < f.q))
    n = draw(st.integers(min_value=left.q, max_value=max_q))
    # Next term after left in the Farey sequence of order n.
    best = None
    for q in range(1, n + 1):
        p = (left.p * q) // left.q + 1
        if p <= q and math.gcd(p, q) == 1:
            candidate = ReducedFraction(p, q)
            if best is None or candidate < best:
                best = candidate
    assert best is not None
    return left, best
