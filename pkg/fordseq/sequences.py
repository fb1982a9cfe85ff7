"""Fraction sequences extracted from Ford circles and validators for their Farey properties."""

import heapq
import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from fordseq.errors import DomainError, InconsistencyError
from fordseq.geometry import (
    ONE,
    ZERO,
    AffineLine,
    AffineMode,
    HorizontalLine,
    LineSpec,
    OriginLine,
    Point,
    ReducedFraction,
    line_touches,
    polyline_curve,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtractionResult:
    """Fractions whose Ford circles a line touches, ascending by value.

    Attributes:
        line: The line (or, for Farey sequences, the horizontal line of that order)
        fractions: Strictly ascending fractions
    """

    line: LineSpec | None
    fractions: tuple[ReducedFraction, ...]

    @property
    def count(self) -> int:
        return len(self.fractions)

    def pairs(self) -> list[tuple[int, int]]:
        return [(f.p, f.q) for f in self.fractions]


class ViolationKind(StrEnum):
    MEDIANT = "mediant"
    ADJACENCY = "adjacency"


@dataclass(frozen=True)
class Violation:
    index: int
    kind: ViolationKind
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _s_bound(m: int) -> int:
    # Largest p with p(p+1) <= m: the largest numerator in F_{1/m}.
    return (math.isqrt(4 * m + 1) - 1) // 2


def extract_origin(m: int) -> ExtractionResult:
    """F_{1/m}: fractions whose circles are touched by y = x/m.

    Enumerates numerators p = 1..s(m) and coprime denominators p <= q <= m // p,
    then merges the per-numerator columns by value. 0/1 is kept only because
    the line predicate accepts it.

    Raises:
        DomainError: If m < 1
    """
    line = OriginLine(m)
    columns = []
    # p = 1 always contributes, including 1/1 when m = 1.
    for p in range(1, max(1, _s_bound(m)) + 1):
        column = [ReducedFraction(p, q) for q in range(m // p, p - 1, -1) if math.gcd(p, q) == 1]
        columns.append(column)

    fractions = list(heapq.merge(*columns))
    if line_touches(line, ZERO):
        fractions.insert(0, ZERO)
    logger.debug("m=%d: %d fractions from %d numerator columns", m, len(fractions), len(columns))
    return ExtractionResult(line=line, fractions=tuple(fractions))


def _affine_q_bound(m: int, b: Fraction) -> int:
    # Exact mode needs 2*m*b*q^2 <= m + sqrt(m^2 + 1) < 2m + 1.
    return math.isqrt(((2 * m + 1) * b.denominator) // (2 * m * b.numerator))


def extract_affine(m: int, b: Fraction, mode: AffineMode | str = AffineMode.EXACT) -> ExtractionResult:
    """Fractions touched by y = x/m + b.

    Args:
        m: Slope denominator (m >= 1)
        b: Intercept in (0, 1)
        mode: "exact" (distance test) or "paper" (pq + m q^2 b <= m)

    Raises:
        DomainError: If b is outside (0, 1) or m < 1
    """
    line = AffineLine(m, Fraction(b), AffineMode(mode))
    return filter_candidates(line, _affine_q_bound(m, line.b))


def farey(n: int) -> ExtractionResult:
    """Farey sequence of order n in [0, 1], built by enumeration.

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError(f"Farey order must be a positive integer, got {n}")
    fractions = sorted(ReducedFraction(p, q) for q in range(1, n + 1) for p in range(q + 1) if math.gcd(p, q) == 1)
    return ExtractionResult(line=HorizontalLine(Fraction(1, n * n)), fractions=tuple(fractions))


def farey_walk(n: int) -> ExtractionResult:
    """Farey sequence of order n via the next-term recurrence (cross-check for farey)."""
    if n < 1:
        raise DomainError(f"Farey order must be a positive integer, got {n}")
    a, b, c, d = 0, 1, 1, n
    fractions = [ZERO]
    while c <= n:
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        fractions.append(ReducedFraction(a, b))
    return ExtractionResult(line=HorizontalLine(Fraction(1, n * n)), fractions=tuple(fractions))


def farey_horizontal(k: Fraction) -> ExtractionResult:
    """Fractions touched by the horizontal line y = k.

    Equals farey(floor(sqrt(1/k))); empty when k > 1.

    Raises:
        DomainError: If k <= 0
    """
    line = HorizontalLine(Fraction(k))
    n = math.isqrt(line.k.denominator // line.k.numerator)
    if n < 1:
        return ExtractionResult(line=line, fractions=())
    return ExtractionResult(line=line, fractions=farey(n).fractions)


def extract(line: LineSpec) -> ExtractionResult:
    """Extract fractions for any supported line."""
    match line:
        case OriginLine(m=m):
            return extract_origin(m)
        case AffineLine(m=m, b=b, mode=mode):
            return extract_affine(m, b, mode)
        case HorizontalLine(k=k):
            return farey_horizontal(k)
    raise DomainError(f"Unsupported line {line!r}")


def filter_candidates(line: LineSpec, q_max: int) -> ExtractionResult:
    """Brute-force extraction: every reduced fraction in [0, 1] with q <= q_max passed through line_touches."""
    fractions = sorted(
        f
        for q in range(1, q_max + 1)
        for p in range(q + 1)
        if math.gcd(p, q) == 1 and line_touches(line, f := ReducedFraction(p, q))
    )
    return ExtractionResult(line=line, fractions=tuple(fractions))


def _largest_step(a: int, b: int, c: int, d: int, m: int) -> int:
    # Largest k with (k c - a)(k d - b) <= m, the larger root of c d k^2 - (a d + b c) k + a b - m.
    linear = a * d + b * c
    disc = linear * linear - 4 * c * d * (a * b - m)
    k = (linear + math.isqrt(disc)) // (2 * c * d)
    while (k + 1) * c - a > 0 and ((k + 1) * c - a) * ((k + 1) * d - b) <= m:
        k += 1
    while (k * c - a) * (k * d - b) > m:
        k -= 1
    return k


def adjacent_walk(m: int) -> ExtractionResult:
    """F_{1/m} generated from 0/1, 1/m by unimodular steps.

    After consecutive a/b < c/d, every fraction adjacent to c/d on its right has the
    form (k c - a)/(k d - b); the next term is the one with the largest k that
    still satisfies pq <= m.

    Raises:
        DomainError: If m < 1
    """
    line = OriginLine(m)
    fractions = [ZERO]
    a, b, c, d = 0, 1, 1, m
    while True:
        fractions.append(ReducedFraction(c, d))
        if c == d:
            break
        k = _largest_step(a, b, c, d, m)
        a, b, c, d = c, d, k * c - a, k * d - b
    return ExtractionResult(line=line, fractions=tuple(fractions))


def _direction(seq: list[ReducedFraction]) -> int:
    if len(seq) < 2:
        return 1
    increasing = all(x < y for x, y in zip(seq, seq[1:], strict=False))
    if increasing:
        return 1
    if all(x > y for x, y in zip(seq, seq[1:], strict=False)):
        return -1
    raise DomainError("Sequence is not strictly monotone")


def validate_mediant(seq: list[ReducedFraction]) -> ValidationReport:
    """Check the Farey sum a2/b2 = (a1 + a3)/(b1 + b3) on every consecutive triple.

    Compared by cross-multiplication, never by reducing the mediant. Sequences
    shorter than three have no triples and pass.

    Raises:
        DomainError: If the sequence is not strictly monotone
    """
    seq = list(seq)
    _direction(seq)
    violations = []
    for index in range(len(seq) - 2):
        left, middle, right = seq[index], seq[index + 1], seq[index + 2]
        if middle.p * (left.q + right.q) != middle.q * (left.p + right.p):
            detail = f"{middle} != ({left.p}+{right.p})/({left.q}+{right.q})"
            violations.append(Violation(index=index, kind=ViolationKind.MEDIANT, detail=detail))
    return ValidationReport(violations=violations)


def validate_adjacency(seq: list[ReducedFraction]) -> ValidationReport:
    """Check |a2 b1 - a1 b2| = 1 on every consecutive pair.

    Raises:
        DomainError: If the sequence is not strictly monotone
    """
    seq = list(seq)
    _direction(seq)
    violations = []
    for index in range(len(seq) - 1):
        left, right = seq[index], seq[index + 1]
        cross = abs(right.p * left.q - left.p * right.q)
        if cross != 1:
            detail = f"|{right.p}*{left.q} - {left.p}*{right.q}| = {cross}"
            violations.append(Violation(index=index, kind=ViolationKind.ADJACENCY, detail=detail))
    return ValidationReport(violations=violations)


def check_reconstructible(seq: list[ReducedFraction]) -> bool:
    """Whether a mediant-valid sequence can be extracted by a curve through the Ford circles.

    True iff some consecutive pair is adjacent. With the Farey sum in place one
    adjacent pair forces all pairs to be adjacent; a partial result means the
    propagation failed and is reported as an internal inconsistency.

    Raises:
        DomainError: If the sequence violates the Farey sum or is not strictly monotone
        InconsistencyError: If some but not all pairs are adjacent
    """
    seq = list(seq)
    if len(seq) < 2:
        raise DomainError("Need at least two fractions to reconstruct a curve")
    mediant = validate_mediant(seq)
    if not mediant.ok:
        first = mediant.violations[0]
        raise DomainError(f"Farey sum fails at index {first.index}: {first.detail}")

    adjacency = validate_adjacency(seq)
    failing = len(adjacency.violations)
    if failing == 0:
        return True
    if failing == len(seq) - 1:
        return False
    first = adjacency.violations[0]
    raise InconsistencyError(
        f"Adjacency did not propagate: {len(seq) - 1 - failing} adjacent pairs but index {first.index} fails"
    )


def polyline_of(result: ExtractionResult) -> list[Point]:
    """Tangent-point polyline through the circles of an extracted sequence."""
    return polyline_curve(list(result.fractions))


__all__ = [
    "ONE",
    "ZERO",
    "ExtractionResult",
    "ValidationReport",
    "Violation",
    "ViolationKind",
    "adjacent_walk",
    "check_reconstructible",
    "extract",
    "extract_affine",
    "extract_origin",
    "farey",
    "farey_horizontal",
    "farey_walk",
    "filter_candidates",
    "polyline_of",
    "validate_adjacency",
    "validate_mediant",
]
