"""Oracle and invariant checks run by the `verify` command.

Each check compares independent constructions (formula, brute force, geometric
predicate, alternative generator) and stops at its first violation.
"""

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from fordseq import approx, arith, counting, geometry, sequences
from fordseq.arith import SieveTables
from fordseq.constants import JUMP_CHECKPOINT, MP_PRECISION_BITS, VECTOR_PREDICATE_MAX, VERIFY_DEFAULTS
from fordseq.geometry import OriginLine, ReducedFraction

logger = logging.getLogger(__name__)

COUNTEREXAMPLE = [ReducedFraction(4, 7), ReducedFraction(9, 14), ReducedFraction(5, 7)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    max_m: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.ok), None)

    def to_text(self) -> str:
        lines = [f"verify max_m={self.max_m}"]
        lines += [f"{'PASS' if r.ok else 'FAIL'} {r.name}{': ' + r.detail if r.detail else ''}" for r in self.results]
        lines.append("OK" if self.ok else f"FAILED: {self.first_failure.name}")
        return "\n".join(lines) + "\n"


class _Violation(Exception):
    pass


def _sweep_limit(max_m: int) -> int:
    # per-m extraction sweeps stop where the vectorized predicate does
    return min(max_m, VECTOR_PREDICATE_MAX)


@dataclass(frozen=True)
class _CandidateGrid:
    """Reduced fractions p/q in [0, 1] with q <= q_max and pq <= 2 q_max, sorted by pq.

    A circle touched by y = x/m satisfies |2pq - m| <= sqrt(m^2 + 1), so pq <= 2m
    is a necessary condition that does not presume the exact characterization.
    """

    p: np.ndarray
    q: np.ndarray
    product: np.ndarray

    @classmethod
    def build(cls, q_max: int) -> "_CandidateGrid":
        ps, qs = [], []
        for q in range(1, q_max + 1):
            p = np.arange(min(q, 2 * q_max // q) + 1, dtype=np.int64)
            ps.append(p)
            qs.append(np.full(p.size, q, dtype=np.int64))
        p, q = np.concatenate(ps), np.concatenate(qs)
        keep = np.gcd(p, q) == 1
        p, q = p[keep], q[keep]
        order = np.argsort(p * q, kind="stable")
        return cls(p=p[order], q=q[order], product=(p * q)[order])

    def touched(self, m: int) -> list[tuple[int, int]]:
        end = int(np.searchsorted(self.product, 2 * m, side="right"))
        p, q = self.p[:end], self.q[:end]
        inside = q <= m
        p, q = p[inside], q[inside]
        mask = geometry.touch_mask(OriginLine(m), p, q)
        p, q = p[mask], q[mask]
        # Distinct fractions with q <= 2 * 10^4 differ by far more than float64 resolution.
        order = np.argsort(p / q, kind="stable")
        return list(zip(p[order].tolist(), q[order].tolist(), strict=True))


def check_extraction(max_m: int, sieves: SieveTables) -> str:
    """extract_origin = predicate filter = adjacent walk, and counts match both cardinality formulas."""
    max_m = _sweep_limit(max_m)
    grid = _CandidateGrid.build(max_m)
    sample = [ReducedFraction(int(p), int(q)) for p, q in zip(grid.p[::97], grid.q[::97], strict=True)]
    previous: set[tuple[int, int]] = set()
    for m in range(1, max_m + 1):
        extracted = sequences.extract_origin(m).pairs()
        if extracted != grid.touched(m):
            raise _Violation(f"m={m}: extraction differs from the line predicate filter")
        if extracted != sequences.adjacent_walk(m).pairs():
            raise _Violation(f"m={m}: extraction differs from the adjacent walk")
        exact = counting.cardinality_exact(m, sieves)
        if not exact == counting.cardinality_mobius(m, sieves) == len(extracted):
            raise _Violation(f"m={m}: cardinality formulas disagree with |F| = {len(extracted)}")
        current = set(extracted)
        if not previous <= current:
            raise _Violation(f"m={m}: F_1/(m-1) is not contained in F_1/m")
        previous = current

    for f in sample:
        line = OriginLine(max_m)
        scalar = geometry.line_touches(line, f)
        vector = bool(geometry.touch_mask(line, np.array([f.p]), np.array([f.q]))[0])
        if scalar != vector:
            raise _Violation(f"{f}: scalar and vectorized predicates disagree")
    return f"m <= {max_m}"


def check_jumps(max_m: int, sieves: SieveTables) -> str:
    """S_m is half the squarefree divisors of m and a power of two; summed jumps match |F_{1/m}|.

    The factor-pair enumeration runs up to VECTOR_PREDICATE_MAX. The divisor sieve
    and the cardinality checkpoints cover the whole range.
    """
    counts = arith.squarefree_divisor_counts(max_m, sieves)
    brute_max = min(max_m, VECTOR_PREDICATE_MAX)
    total = counting.cardinality_exact(1, sieves)
    for m in range(2, max_m + 1):
        record = counting.jump(m, sieves)
        total += record.s_m
        if 2 * record.s_m != counts[m]:
            raise _Violation(f"m={m}: jump {record.s_m} but {counts[m]} squarefree divisors")
        if m <= brute_max and record.s_m != len(arith.coprime_factor_pairs(m)):
            raise _Violation(f"m={m}: jump {record.s_m} disagrees with the coprime factor pairs")
        if record.s_m & (record.s_m - 1):
            raise _Violation(f"m={m}: jump {record.s_m} is not a power of two")
        if m % JUMP_CHECKPOINT == 0 or m == max_m:
            exact = counting.cardinality_exact(m, sieves)
            if not total == exact == counting.cardinality_mobius(m, sieves):
                raise _Violation(f"m={m}: summed jumps give {total}, cardinality formulas give {exact}")
    return f"2 <= m <= {max_m}, factor pairs to {brute_max}"


def check_theorems(max_m: int, sieves: SieveTables) -> str:
    """Farey sum and adjacency on every extracted sequence and Farey sequence; the 9/14 counterexample."""
    max_m = _sweep_limit(max_m)
    for m in range(1, max_m + 1):
        fractions = list(sequences.extract_origin(m).fractions)
        if len(fractions) >= 3 and not sequences.validate_mediant(fractions).ok:
            raise _Violation(f"m={m}: Farey sum fails")
        if not sequences.validate_adjacency(fractions).ok:
            raise _Violation(f"m={m}: consecutive circles not tangent")
    farey_max = min(VERIFY_DEFAULTS["farey_max_n"], max_m)
    for n in range(1, farey_max + 1):
        fractions = list(sequences.farey(n).fractions)
        if not sequences.validate_mediant(fractions).ok or not sequences.validate_adjacency(fractions).ok:
            raise _Violation(f"Farey order {n} fails the Farey sum or adjacency")
    if not sequences.validate_mediant(COUNTEREXAMPLE).ok:
        raise _Violation("4/7, 9/14, 5/7 should satisfy the Farey sum")
    if sequences.validate_adjacency(COUNTEREXAMPLE).ok or sequences.check_reconstructible(COUNTEREXAMPLE):
        raise _Violation("4/7, 9/14, 5/7 should not be reconstructible")
    return f"m <= {max_m}, Farey n <= {farey_max}"


def check_limits(max_m: int, sieves: SieveTables) -> str:
    """Horizontal lines give Farey sequences; affine lines approach them as m grows."""
    horizontal_max = min(VERIFY_DEFAULTS["horizontal_max_n"], max_m)
    for n in range(1, horizontal_max + 1):
        if sequences.farey_horizontal(Fraction(1, n * n)).fractions != sequences.farey(n).fractions:
            raise _Violation(f"y = 1/{n * n} does not extract the Farey sequence of order {n}")

    n = VERIFY_DEFAULTS["affine_n"]
    affine = set(sequences.extract_affine(VERIFY_DEFAULTS["affine_m"], Fraction(1, n * n)).fractions)
    difference = affine ^ set(sequences.farey(n).fractions)
    if any(f.q != n for f in difference):
        raise _Violation(f"Affine limit differs from Farey order {n} away from q = {n}: {sorted(difference)}")
    return f"n <= {horizontal_max}"


def check_appendix(max_m: int, sieves: SieveTables) -> str:
    """|phi_x(x, n) - x phi(n)/n| < phi(n), compared as integers after multiplying by n."""
    n_max = min(VERIFY_DEFAULTS["appendix_max_n"], max_m)
    x_max = VERIFY_DEFAULTS["appendix_max_x"]
    x = np.arange(x_max + 1, dtype=np.int64)
    for n in range(1, n_max + 1):
        phi_n = arith.totient(n, sieves)
        values = arith.phi_x_values(x, n, sieves)
        if np.any(np.abs(values * n - x * phi_n) >= phi_n * n):
            raise _Violation(f"n={n}: phi_x leaves the bound |phi_x(x, n) - x phi(n)/n| < phi(n)")
        mismatch = np.flatnonzero(values != arith.phi_x_table(x_max, n))
        if mismatch.size:
            raise _Violation(f"n={n}, x={int(mismatch[0])}: phi_x disagrees with direct counting")
    return f"n <= {n_max}, x <= {x_max}"


def check_lattice(max_m: int, sieves: SieveTables) -> str:
    """Visible lattice points in the bounded region number |F_{1/m}| - 1; s(m) is the largest numerator."""
    max_m = _sweep_limit(max_m)
    cardinalities = counting.cardinality_table(max_m, sieves)
    for m in range(2, max_m + 1):
        region = counting.lattice_region_count(m)
        if region.visible_points != cardinalities[m] - 1:
            raise _Violation(f"m={m}: {region.visible_points} visible points, expected |F| - 1")
        largest = max(f.p for f in sequences.extract_origin(m).fractions)
        if counting.s_of(m) != largest:
            raise _Violation(f"m={m}: s(m) = {counting.s_of(m)} but the largest numerator is {largest}")
    return f"2 <= m <= {max_m}"


def check_constants(max_m: int, sieves: SieveTables) -> str:
    """A agrees with its partial sum, and the a1, a2, a3 coefficients with values rebuilt from pi and that sum."""
    terms = VERIFY_DEFAULTS["constant_A_terms"]
    k = arith.constants()
    partial = arith.constant_A(terms)
    bound = arith.constant_A_tail_bound(terms)
    if abs(partial - k.A) > bound:
        raise _Violation(f"A = {mpmath.nstr(k.A, 12)} but the partial sum over n <= {terms} is {mpmath.nstr(partial, 12)}")

    with mpmath.workprec(MP_PRECISION_BITS):
        zeta2 = mpmath.pi**2 / 6
        expected = {
            "a1": (1 + 2 * mpmath.euler - 2 * partial * zeta2, mpmath.mpf(2)),
            "a2": (2 * mpmath.euler - 1, 1 + 6 / mpmath.pi**2),
            "a3": (mpmath.mpf(1), mpmath.mpf(0)),
        }
        tolerance = {"a1": 2 * zeta2 * bound, "a2": mpmath.mpf(10) ** -30, "a3": mpmath.mpf(0)}
        forms = approx.approximation_forms()
        for name, form in forms.items():
            alpha, beta = expected[name]
            if abs(form.alpha - alpha) > tolerance[name] or abs(form.beta - beta) > mpmath.mpf(10) ** -30:
                raise _Violation(f"{name}: coefficients ({form.alpha}, {form.beta}) differ from ({alpha}, {beta})")
    return f"A to {mpmath.nstr(bound, 3)}, alpha_1 = {mpmath.nstr(forms['a1'].alpha, 6)}"


CHECKS: list[tuple[str, Callable[[int, SieveTables], str]]] = [
    ("extraction", check_extraction),
    ("jumps", check_jumps),
    ("theorems", check_theorems),
    ("limits", check_limits),
    ("appendix", check_appendix),
    ("lattice", check_lattice),
    ("constants", check_constants),
]


def run_verification(max_m: int = VERIFY_DEFAULTS["max_m"], sieves: SieveTables | None = None) -> VerificationReport:
    """Run every check up to max_m and collect their outcomes."""
    tables = sieves or arith.default_sieves()
    report = VerificationReport(max_m=max_m)
    for name, check in CHECKS:
        started = time.perf_counter()
        try:
            detail = check(max_m, tables)
            report.results.append(CheckResult(name=name, ok=True, detail=detail))
        except _Violation as e:
            report.results.append(CheckResult(name=name, ok=False, detail=str(e)))
        logger.debug("Check %s finished in %.2fs", name, time.perf_counter() - started)
    return report
