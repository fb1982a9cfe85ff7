"""Ford circles, lines, and exact tangency predicates.

Every predicate here clears denominators and compares integers; no floating
point is involved, so boundary cases such as pq = m are decided exactly.
"""

import math
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import total_ordering

import numpy as np

from fordseq.constants import VECTOR_PREDICATE_MAX
from fordseq.errors import DomainError

Point = tuple[Fraction, Fraction]


@total_ordering
@dataclass(frozen=True, slots=True)
class ReducedFraction:
    """A reduced fraction p/q in [0, 1], identifying the Ford circle tangent to the x-axis at p/q.

    Ordering compares values by cross-multiplication.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1 or self.p < 0 or self.p > self.q:
            raise DomainError(f"{self.p}/{self.q} is not a fraction in [0, 1]")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not reduced")

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __lt__(self, other: "ReducedFraction") -> bool:
        if not isinstance(other, ReducedFraction):
            return NotImplemented
        return self.p * other.q < other.p * self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> "ReducedFraction":
        """Parse "p/q"; the pair must already be reduced."""
        numerator, sep, denominator = text.strip().partition("/")
        if not sep or not numerator.isdigit() or not denominator.isdigit():
            raise DomainError(f"Expected a fraction of the form p/q, got {text!r}")
        return cls(int(numerator), int(denominator))


ZERO = ReducedFraction(0, 1)
ONE = ReducedFraction(1, 1)


@dataclass(frozen=True)
class FordCircle:
    """Ford circle of a fraction: center (p/q, 1/(2q^2)), radius 1/(2q^2)."""

    frac: ReducedFraction
    center_x: Fraction
    center_y: Fraction
    radius: Fraction

    @property
    def center(self) -> Point:
        return (self.center_x, self.center_y)


class AffineMode(StrEnum):
    """Affine-line membership test.

    EXACT compares the squared center-to-line distance with the squared radius.
    PAPER uses the simplified condition pq + m q^2 b <= m.
    """

    EXACT = "exact"
    PAPER = "paper"


@dataclass(frozen=True)
class OriginLine:
    """y = x / m."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"Slope denominator m must be a positive integer, got {self.m}")


@dataclass(frozen=True)
class AffineLine:
    """y = x / m + b with 0 < b < 1."""

    m: int
    b: Fraction
    mode: AffineMode = field(default=AffineMode.EXACT)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"Slope denominator m must be a positive integer, got {self.m}")
        if not 0 < self.b < 1:
            raise DomainError(f"Intercept b must lie in (0, 1), got {self.b}")
        object.__setattr__(self, "mode", AffineMode(self.mode))


@dataclass(frozen=True)
class HorizontalLine:
    """y = k with k > 0."""

    k: Fraction

    def __post_init__(self) -> None:
        if self.k <= 0:
            raise DomainError(f"Height k must be positive, got {self.k}")


LineSpec = OriginLine | AffineLine | HorizontalLine


def circle_of(f: ReducedFraction) -> FordCircle:
    radius = Fraction(1, 2 * f.q * f.q)
    return FordCircle(frac=f, center_x=Fraction(f.p, f.q), center_y=radius, radius=radius)


def circles_tangent(f1: ReducedFraction, f2: ReducedFraction) -> bool:
    """Whether the Ford circles of two distinct fractions are tangent.

    Uses the determinant criterion |p2 q1 - p1 q2| = 1.

    Raises:
        DomainError: If f1 == f2
    """
    if f1 == f2:
        raise DomainError(f"A circle is not tangent to itself ({f1})")
    return abs(f2.p * f1.q - f1.p * f2.q) == 1


def circles_tangent_geometric(f1: ReducedFraction, f2: ReducedFraction) -> bool:
    """Tangency decided from the circles themselves: |c1 - c2|^2 = (r1 + r2)^2, exactly."""
    if f1 == f2:
        raise DomainError(f"A circle is not tangent to itself ({f1})")
    c1, c2 = circle_of(f1), circle_of(f2)
    return distance_squared(c1.center, c2.center) == (c1.radius + c2.radius) ** 2


def distance_squared(a: Point, b: Point) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def distance_to_center_squared(point: Point, circle: FordCircle) -> Fraction:
    """Squared distance from a point to the circle's center; equals radius^2 for points on the circle."""
    return distance_squared(point, circle.center)


def line_touches(line: LineSpec, f: ReducedFraction) -> bool:
    """Whether the line meets the Ford circle of f (distance from center <= radius).

    OriginLine y = x/m:       (2pq - m)^2 <= m^2 + 1, equivalent to pq <= m.
    AffineLine, b = bn/bd:    exact mode (2pq*bd + 2*bn*m*q^2 - m*bd)^2 <= (m^2 + 1) * bd^2;
                              paper mode pq*bd + m*q^2*bn <= m*bd.
    HorizontalLine, k = kn/kd: q^2 * kn <= kd.
    """
    p, q = f.p, f.q
    match line:
        case OriginLine(m=m):
            return (2 * p * q - m) ** 2 <= m * m + 1
        case AffineLine(m=m, b=b, mode=AffineMode.EXACT):
            bn, bd = b.numerator, b.denominator
            return (2 * p * q * bd + 2 * bn * m * q * q - m * bd) ** 2 <= (m * m + 1) * bd * bd
        case AffineLine(m=m, b=b, mode=AffineMode.PAPER):
            bn, bd = b.numerator, b.denominator
            return p * q * bd + m * q * q * bn <= m * bd
        case HorizontalLine(k=k):
            return q * q * k.numerator <= k.denominator
    raise DomainError(f"Unsupported line {line!r}")


def touch_mask(line: OriginLine, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vectorized line_touches for an origin line over candidate numerator/denominator arrays.

    Raises:
        DomainError: If m or the denominators are too large for int64 evaluation
    """
    if not isinstance(line, OriginLine):
        raise DomainError("touch_mask supports origin lines only")
    if line.m > VECTOR_PREDICATE_MAX or (q.size and int(q.max()) > VECTOR_PREDICATE_MAX):
        raise DomainError(f"Vectorized predicate limited to m, q <= {VECTOR_PREDICATE_MAX}")
    m = np.int64(line.m)
    pq2 = 2 * p.astype(np.int64) * q.astype(np.int64)
    return (pq2 - m) ** 2 <= m * m + 1


def tangent_point(f1: ReducedFraction, f2: ReducedFraction) -> Point:
    """The point where the Ford circles of two adjacent fractions touch.

    Lies on the segment between the centers at distance r1 from the first center.

    Raises:
        DomainError: If the circles are not tangent
    """
    if not circles_tangent(f1, f2):
        raise DomainError(f"Circles of {f1} and {f2} are not tangent")
    c1, c2 = circle_of(f1), circle_of(f2)
    t = c1.radius / (c1.radius + c2.radius)
    return (
        c1.center_x + t * (c2.center_x - c1.center_x),
        c1.center_y + t * (c2.center_y - c1.center_y),
    )


def polyline_curve(seq: list[ReducedFraction]) -> list[Point]:
    """Polyline through center, tangent point, center, ... for a chain of tangent circles.

    Args:
        seq: Fractions whose consecutive circles are tangent

    Returns:
        2 * len(seq) - 1 vertices (empty for an empty sequence)

    Raises:
        DomainError: If a consecutive pair is not tangent; the message carries its index
    """
    if not seq:
        return []
    vertices = [circle_of(seq[0]).center]
    for index, (left, right) in enumerate(zip(seq, seq[1:], strict=False)):
        if left == right or not circles_tangent(left, right):
            raise DomainError(f"Fractions {left} and {right} at index {index} are not adjacent")
        vertices.append(tangent_point(left, right))
        vertices.append(circle_of(right).center)
    return vertices
