"""Jumps and exact cardinalities of F_{1/m}, lattice-region counts and visible-point ratios."""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from fordseq import arith, sequences
from fordseq.arith import SieveTables
from fordseq.errors import DomainError, InconsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JumpRecord:
    """Cardinality increment S_m = |F_{1/m}| - |F_{1/(m-1)}| and the omega value behind it."""

    m: int
    s_m: int
    omega_m: int


@dataclass(frozen=True)
class RegionCount:
    """Lattice points (p, q) with 1 <= p <= s, p <= q <= m/p, and how many of them are visible.

    visible_points equals cardinality_exact(m) - 1: the region holds every
    fraction of F_{1/m} except 0/1.
    """

    m: int
    s: int
    total_points: int
    visible_points: int

    @property
    def ratio(self) -> float:
        return self.visible_points / self.total_points


def _require_positive(m: int) -> None:
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")


def jump(m: int, sieves: SieveTables | None = None) -> JumpRecord:
    """S_m = 2^(omega(m) - 1) for m >= 2 and 1 for m = 1.

    Raises:
        DomainError: If m < 1
    """
    _require_positive(m)
    if m == 1:
        return JumpRecord(m=1, s_m=1, omega_m=0)
    omega_m = arith.omega(m, sieves)
    return JumpRecord(m=m, s_m=1 << (omega_m - 1), omega_m=omega_m)


def cardinality_exact(m: int, sieves: SieveTables | None = None) -> int:
    """|F_{1/m}| = sum_{j=2}^{m} 2^(omega(j) - 1) + 2.

    Raises:
        DomainError: If m < 1
    """
    _require_positive(m)
    if m == 1:
        return 2
    total = 2
    for block in arith.iter_blocks(m, sieves):
        omegas = block.omega[block.n >= 2].astype(np.int64)
        total += int(np.left_shift(1, omegas - 1).sum())
    return total


def cardinality_table(m_max: int, sieves: SieveTables | None = None) -> np.ndarray:
    """|F_{1/m}| for every 1 <= m <= m_max as an int64 array indexed by m (index 0 unused)."""
    _require_positive(m_max)
    omegas = np.concatenate([block.omega for block in arith.iter_blocks(m_max, sieves)]).astype(np.int64)
    jumps = np.zeros(m_max + 1, dtype=np.int64)
    jumps[2:] = np.left_shift(1, omegas[1:] - 1)
    table = np.cumsum(jumps) + 2
    table[0] = 0
    return table


def cardinality_mobius(m: int, sieves: SieveTables | None = None) -> int:
    """|F_{1/m}| = (1/2) sum_{j=2}^{m} sum_{d | j} mu(d)^2 + 2.

    The double sum is evaluated by swapping the order of summation: each
    squarefree d <= m is counted once for each of its floor(m/d) multiples,
    less the single term for j = 1.

    Raises:
        DomainError: If m < 1
    """
    _require_positive(m)
    double_sum = -1
    for block in arith.iter_blocks(m, sieves):
        double_sum += int((m // block.n[block.mu != 0]).sum())
    if double_sum % 2:
        raise InconsistencyError(f"Squarefree divisor count for m={m} is odd; tables are corrupt")
    return double_sum // 2 + 2


def cardinality_brute(m: int) -> int:
    return sequences.extract_origin(m).count


def column_count(m: int, p: int, sieves: SieveTables | None = None) -> int:
    """C_p: denominators q with gcd(p, q) = 1 and p <= q <= m/p."""
    upper = m // p
    if upper < p:
        return 0
    return arith.phi_x(upper, p, sieves) - arith.phi_x(p - 1, p, sieves)


def cardinality_columns(m: int, sieves: SieveTables | None = None) -> int:
    """|F_{1/m}| = 1 + sum over numerators p <= s(m) of C_p, each C_p counted with phi_x.

    The columns cover every fraction except 0/1; C_1 already holds 1/1.
    """
    _require_positive(m)
    if m == 1:
        return 2
    return 1 + sum(column_count(m, p, sieves) for p in range(1, s_of(m) + 1))


def s_of(m: int) -> int:
    """The s with s(s+1) <= m < (s+1)(s+2): the largest numerator in F_{1/m}.

    Raises:
        DomainError: If m < 2
    """
    if m < 2:
        raise DomainError(f"s(m) is defined for m >= 2, got {m}")
    return (math.isqrt(4 * m + 1) - 1) // 2


def lattice_region_count(m: int) -> RegionCount:
    """Count lattice points bounded by p = 1, q = p and q = m/p, and the visible ones among them.

    Raises:
        DomainError: If m < 2
    """
    s = s_of(m)
    total = 0
    visible = 0
    for p in range(1, s + 1):
        q = np.arange(p, m // p + 1, dtype=np.int64)
        total += q.size
        visible += int(np.count_nonzero(np.gcd(q, p) == 1))
    return RegionCount(m=m, s=s, total_points=total, visible_points=visible)


def visible_count(r: int, sieves: SieveTables | None = None) -> int:
    """Pairs (x, y) in [1, r]^2 with gcd(x, y) = 1, as sum over d <= r of mu(d) floor(r/d)^2."""
    if r < 1:
        raise DomainError(f"r must be a positive integer, got {r}")
    total = 0
    for block in arith.iter_blocks(r, sieves):
        quotients = r // block.n
        total += int((block.mu.astype(np.int64) * quotients * quotients).sum())
    return total


def visible_ratio(r: int, sieves: SieveTables | None = None) -> float:
    """Proportion of coprime pairs in [1, r]^2; tends to 6/pi^2."""
    return float(Fraction(visible_count(r, sieves), r * r))


def iter_jumps(m_from: int, m_to: int, sieves: SieveTables | None = None) -> Iterator[tuple[JumpRecord, int]]:
    """Yield (jump(m), |F_{1/m}|) for m_from <= m <= m_to.

    Raises:
        DomainError: If the range is empty or starts below 1
    """
    _require_positive(m_from)
    if m_from > m_to:
        raise DomainError(f"Empty range: from {m_from} > to {m_to}")
    tables = sieves or arith.default_sieves()
    cardinality = cardinality_exact(m_from, tables)
    for m in range(m_from, m_to + 1):
        record = jump(m, tables)
        if m > m_from:
            cardinality += record.s_m
        yield record, cardinality


def jump_table(m_from: int, m_to: int, sieves: SieveTables | None = None) -> list[tuple[int, int, int, int]]:
    """Rows (m, omega(m), S_m, |F_{1/m}|) for the CSV export."""
    return [(r.m, r.omega_m, r.s_m, card) for r, card in iter_jumps(m_from, m_to, sieves)]


def cardinality(m: int, method: str = "exact", sieves: SieveTables | None = None) -> int:
    """Evaluate |F_{1/m}| with one of the methods in CARDINALITY_METHODS."""
    match method:
        case "exact":
            return cardinality_exact(m, sieves)
        case "mobius":
            return cardinality_mobius(m, sieves)
        case "brute":
            _require_positive(m)
            return cardinality_brute(m)
        case "columns":
            return cardinality_columns(m, sieves)
    raise DomainError(f"Unknown cardinality method {method!r}")
