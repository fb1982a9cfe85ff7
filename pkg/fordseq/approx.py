"""Closed-form log-linear approximations of |F_{1/m}| and the sums they are derived from.

All three approximations share the form m / (2 zeta(2)) * (ln m + alpha) + beta.
Sums are kept as exact rationals and only converted to mpmath reals when they
are compared with an asymptotic estimate.
"""

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from fordseq import arith, counting
from fordseq.arith import SieveTables
from fordseq.constants import APPROXIMATIONS, EXACT_SUM_MAX, MP_PRECISION_BITS, REPORT_DIGITS
from fordseq.errors import DomainError, ResourceLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ApproximationForm:
    """Coefficients of m / (2 zeta(2)) * (ln m + alpha) + beta."""

    name: str
    alpha: mpmath.mpf
    beta: mpmath.mpf

    def evaluate(self, m: int) -> mpmath.mpf:
        k = arith.constants()
        with mpmath.workprec(MP_PRECISION_BITS):
            return m / (2 * k.zeta2) * (mpmath.log(m) + self.alpha) + self.beta


def approximation_forms() -> dict[str, ApproximationForm]:
    """The (alpha, beta) pairs of a1, a2 and a3."""
    k = arith.constants()
    with mpmath.workprec(MP_PRECISION_BITS):
        return {
            "a1": ApproximationForm("a1", 1 + 2 * k.euler_C - 2 * k.A * k.zeta2, mpmath.mpf(2)),
            "a2": ApproximationForm("a2", 2 * k.euler_C - 1, 1 + 1 / k.zeta2),
            "a3": ApproximationForm("a3", mpmath.mpf(1), mpmath.mpf(0)),
        }


def _require_m(m: int) -> None:
    if m < 2:
        raise DomainError(f"Approximations are defined for m >= 2, got {m}")


def a1(m: int) -> mpmath.mpf:
    """m/(2 zeta(2)) (ln m + 1 + 2C - 2A zeta(2)) + 2, from summing over numerators.

    Raises:
        DomainError: If m < 2
    """
    _require_m(m)
    return approximation_forms()["a1"].evaluate(m)


def a2(m: int) -> mpmath.mpf:
    """m/(2 zeta(2)) (ln m + 2C - 1) + 1 + 1/zeta(2), from visible lattice points.

    Raises:
        DomainError: If m < 2
    """
    _require_m(m)
    return approximation_forms()["a2"].evaluate(m)


def a3(m: int) -> mpmath.mpf:
    """m/(2 zeta(2)) (ln m + 1), from summing over denominators.

    Raises:
        DomainError: If m < 2
    """
    _require_m(m)
    return approximation_forms()["a3"].evaluate(m)


def _phi_values(s: int, sieves: SieveTables | None) -> list[int]:
    return [arith.totient(p, sieves) for p in range(1, s + 1)]


def _require_exact_range(hi: int) -> None:
    if hi > EXACT_SUM_MAX:
        raise ResourceLimitError(f"Exact rational sums run to {EXACT_SUM_MAX}, got an upper end of {hi}")


def _exact_phi_over_square_sum(phi: list[int], lo: int, hi: int) -> Fraction:
    # sum_{lo <= p <= hi} phi(p) / p^2 over the common denominator lcm(lo..hi)^2
    if hi < lo:
        return Fraction(0)
    _require_exact_range(hi)
    common = math.lcm(*range(lo, hi + 1)) ** 2
    numerator = sum(phi[p - 1] * (common // (p * p)) for p in range(lo, hi + 1))
    return Fraction(numerator, common)


def sum_phi_over_p2(s: int, sieves: SieveTables | None = None) -> tuple[Fraction, mpmath.mpf]:
    """Exact sum_{p <= s} phi(p)/p^2 and its estimate (ln s + C)/zeta(2) - A.

    Raises:
        DomainError: If s < 1
        ResourceLimitError: If s > EXACT_SUM_MAX
    """
    if s < 1:
        raise DomainError(f"s must be a positive integer, got {s}")
    _require_exact_range(s)
    exact = _exact_phi_over_square_sum(_phi_values(s, sieves), 1, s)
    k = arith.constants()
    with mpmath.workprec(MP_PRECISION_BITS):
        asymptotic = (mpmath.log(s) + k.euler_C) / k.zeta2 - k.A
    return exact, asymptotic


def sum_phi(s: int, sieves: SieveTables | None = None) -> tuple[int, mpmath.mpf]:
    """Exact sum_{p <= s} phi(p) and its estimate s^2 / (2 zeta(2)).

    Raises:
        DomainError: If s < 1
    """
    if s < 1:
        raise DomainError(f"s must be a positive integer, got {s}")
    exact = sum(_phi_values(s, sieves))
    k = arith.constants()
    with mpmath.workprec(MP_PRECISION_BITS):
        asymptotic = mpmath.mpf(s) ** 2 / (2 * k.zeta2)
    return exact, asymptotic


def sum_phi_over_p2_tail(m: int, sieves: SieveTables | None = None) -> tuple[Fraction, mpmath.mpf]:
    """Exact sum over sqrt(m) < q <= m of phi(q)/q^2 and its estimate ln(m) / (2 zeta(2)).

    Raises:
        DomainError: If m < 4
        ResourceLimitError: If m > EXACT_SUM_MAX
    """
    if m < 4:
        raise DomainError(f"Tail sum needs m >= 4, got {m}")
    _require_exact_range(m)
    exact = _exact_phi_over_square_sum(_phi_values(m, sieves), math.isqrt(m) + 1, m)
    k = arith.constants()
    with mpmath.workprec(MP_PRECISION_BITS):
        asymptotic = mpmath.log(m) / (2 * k.zeta2)
    return exact, asymptotic


def harmonic(s: int) -> Fraction:
    if s < 1:
        raise DomainError(f"s must be a positive integer, got {s}")
    common = math.lcm(*range(1, s + 1))
    return Fraction(sum(common // k for k in range(1, s + 1)), common)


def triangular(s: int) -> int:
    if s < 1:
        raise DomainError(f"s must be a positive integer, got {s}")
    return s * (s + 1) // 2


def intermediate_forms(m: int, sieves: SieveTables | None = None) -> dict[str, mpmath.mpf]:
    """Estimates of |F_{1/m}| taken before s is eliminated from each derivation.

    column_sum:  2 + sum_{p <= s} (m phi(p)/p^2 - phi(p))
    lattice:     1 + (m H_s - T_s + 1) / zeta(2)
    split_sum:   sum_{q <= sqrt m} phi(q) + m sum_{sqrt m < q <= m} phi(q)/q^2

    Raises:
        DomainError: If m < 2
        ResourceLimitError: If m > EXACT_SUM_MAX
    """
    _require_m(m)
    _require_exact_range(m)
    s = counting.s_of(m)
    phi = _phi_values(s, sieves)
    column_sum = 2 + m * _exact_phi_over_square_sum(phi, 1, s) - sum(phi)

    root = math.isqrt(m)
    phi_to_m = _phi_values(m, sieves)
    split_sum = sum(phi_to_m[:root]) + m * _exact_phi_over_square_sum(phi_to_m, root + 1, m)

    k = arith.constants()
    with mpmath.workprec(MP_PRECISION_BITS):
        h = harmonic(s)
        lattice = 1 + (m * mpmath.mpf(h.numerator) / h.denominator - triangular(s) + 1) / k.zeta2
        return {
            "column_sum": mpmath.mpf(column_sum.numerator) / column_sum.denominator,
            "lattice": lattice,
            "split_sum": mpmath.mpf(split_sum.numerator) / split_sum.denominator,
        }


@dataclass(frozen=True)
class ApproxReport:
    """Exact cardinality against the three approximations at one m.

    errors[i] = exact - a_i(m); ratios[i] = |errors[i]| / sqrt(m).
    """

    m: int
    exact: int
    a1: mpmath.mpf
    a2: mpmath.mpf
    a3: mpmath.mpf
    errors: tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]
    ratios: tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]

    @property
    def values(self) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
        return (self.a1, self.a2, self.a3)


@dataclass(frozen=True)
class ErrorSummary:
    """Aggregate of an error_report range."""

    reports: list[ApproxReport]
    max_ratio: dict[str, mpmath.mpf]
    mean_abs_error: dict[str, mpmath.mpf]

    @property
    def best(self) -> str:
        return min(APPROXIMATIONS, key=lambda name: self.mean_abs_error[name])

    def rows(self) -> list[tuple[object, ...]]:
        """CSV rows in REPORT_CSV_COLUMNS order with values at REPORT_DIGITS significant digits."""
        return [
            (r.m, r.exact, *(mpmath.nstr(v, REPORT_DIGITS) for v in (*r.values, *r.errors, *r.ratios)))
            for r in self.reports
        ]


def approx_report(m: int, exact: int) -> ApproxReport:
    forms = approximation_forms()
    with mpmath.workprec(MP_PRECISION_BITS):
        values = tuple(forms[name].evaluate(m) for name in APPROXIMATIONS)
        errors = tuple(exact - v for v in values)
        root = mpmath.sqrt(m)
        ratios = tuple(abs(e) / root for e in errors)
    return ApproxReport(m=m, exact=exact, a1=values[0], a2=values[1], a3=values[2], errors=errors, ratios=ratios)


def error_report(m_from: int, m_to: int, step: int = 1, sieves: SieveTables | None = None) -> ErrorSummary:
    """Compare exact cardinalities with a1, a2, a3 for m = m_from, m_from + step, ..., <= m_to.

    Raises:
        DomainError: If m_from < 2, m_from > m_to or step < 1
    """
    if m_from < 2 or m_from > m_to:
        raise DomainError(f"Need 2 <= from <= to, got from={m_from}, to={m_to}")
    if step < 1:
        raise DomainError(f"step must be a positive integer, got {step}")

    wanted = set(range(m_from, m_to + 1, step))
    reports = [approx_report(record.m, card) for record, card in counting.iter_jumps(m_from, m_to, sieves) if record.m in wanted]
    logger.debug("Error report over %d values of m in [%d, %d]", len(reports), m_from, m_to)

    with mpmath.workprec(MP_PRECISION_BITS):
        max_ratio = {name: max(r.ratios[i] for r in reports) for i, name in enumerate(APPROXIMATIONS)}
        mean_abs_error = {
            name: mpmath.fsum(abs(r.errors[i]) for r in reports) / len(reports) for i, name in enumerate(APPROXIMATIONS)
        }
    return ErrorSummary(reports=reports, max_ratio=max_ratio, mean_abs_error=mean_abs_error)


@dataclass(frozen=True)
class EnvelopeSample:
    """Deviation of an exact sum from its estimate, scaled by the claimed error order."""

    s: int
    deviation: mpmath.mpf
    scaled: mpmath.mpf


def sweep_phi_over_p2(s_values: Iterable[int], sieves: SieveTables | None = None) -> list[EnvelopeSample]:
    """|exact - estimate| / (ln s / s) for sum phi(p)/p^2 at each s (s >= 2).

    Shares one common denominator across the sweep so each point costs a single reduction.
    The largest point may not exceed EXACT_SUM_MAX (ResourceLimitError).
    """
    points = sorted(set(s_values))
    if not points or points[0] < 2:
        raise DomainError("Sweep points must be integers >= 2")
    s_max = points[-1]
    _require_exact_range(s_max)
    phi = _phi_values(s_max, sieves)
    common = math.lcm(*range(1, s_max + 1)) ** 2
    k = arith.constants()

    samples = []
    numerator = 0
    previous = 0
    for s in points:
        numerator += sum(phi[p - 1] * (common // (p * p)) for p in range(previous + 1, s + 1))
        previous = s
        exact = Fraction(numerator, common)
        with mpmath.workprec(MP_PRECISION_BITS):
            estimate = (mpmath.log(s) + k.euler_C) / k.zeta2 - k.A
            deviation = abs(mpmath.mpf(exact.numerator) / exact.denominator - estimate)
            samples.append(EnvelopeSample(s=s, deviation=deviation, scaled=deviation * s / mpmath.log(s)))
    return samples


def sweep_phi(s_values: Iterable[int], sieves: SieveTables | None = None) -> list[EnvelopeSample]:
    """|exact - s^2/(2 zeta(2))| / (s ln s) for the totient summatory function at each s (s >= 2)."""
    points = sorted(set(s_values))
    if not points or points[0] < 2:
        raise DomainError("Sweep points must be integers >= 2")
    prefix = np.cumsum(np.array(_phi_values(points[-1], sieves), dtype=np.int64))
    k = arith.constants()

    samples = []
    for s in points:
        with mpmath.workprec(MP_PRECISION_BITS):
            deviation = abs(int(prefix[s - 1]) - mpmath.mpf(s) ** 2 / (2 * k.zeta2))
            samples.append(EnvelopeSample(s=s, deviation=deviation, scaled=deviation / (s * mpmath.log(s))))
    return samples
