"""Exact arithmetic primitives and arithmetic-function sieves.

Provides:
- gcd with an explicit domain check
- SieveTables: phi, mu, omega and smallest-prime-factor arrays up to a limit
- point queries (totient, mobius, omega, divisors) with factorization fallback beyond the limit
- segmented omega/mu blocks for ranges past the limit
- squarefree divisor counts by a divisor sieve
- coprime factor pairs of m, the brute-force oracle for jumps
- phi_x: integers in {1, ..., x} coprime to n
- high-precision constants zeta(2), Euler's constant and A = sum mu(n) ln(n) / n^2
"""

import logging
import math
import time
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from sympy import factorint

from fordseq.config import get_sieve_limit
from fordseq.constants import CONSTANT_A_TERMS, MAX_SIEVE_LIMIT, MIN_SEGMENT_SIZE, MP_PRECISION_BITS
from fordseq.errors import DomainError, ResourceLimitError

logger = logging.getLogger(__name__)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers.

    Args:
        a: Nonnegative integer
        b: Nonnegative integer

    Returns:
        gcd(a, b)

    Raises:
        DomainError: If either input is negative or both are zero
    """
    if a < 0 or b < 0:
        raise DomainError(f"gcd is defined here for nonnegative integers, got ({a}, {b})")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


@dataclass(frozen=True, eq=False)
class SieveTables:
    """Arithmetic-function tables for 0 <= n <= limit.

    Attributes:
        limit: Largest tabulated n
        phi: int32 array, phi[n] = Euler's totient of n
        mu: int8 array, mu[n] = Moebius function of n
        omega: int8 array, omega[n] = number of distinct prime factors of n
        spf: int32 array, spf[n] = smallest prime factor of n (spf[1] = 1)

    All arrays are read-only; index 0 is a placeholder.
    """

    limit: int
    phi: np.ndarray
    mu: np.ndarray
    omega: np.ndarray
    spf: np.ndarray

    def covers(self, n: int) -> bool:
        return 1 <= n <= self.limit


def _check_budget(limit: int) -> None:
    if limit < 1:
        raise DomainError(f"Sieve limit must be at least 1, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceLimitError(f"Sieve limit {limit} exceeds the budget of {MAX_SIEVE_LIMIT}")


def _prime_mask(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False
    return is_prime


def build_sieves(limit: int) -> SieveTables:
    """Build phi, mu, omega and smallest-prime-factor tables up to limit.

    Each prime p touches only its multiples, so the total work is O(N log log N).

    Args:
        limit: Largest n to tabulate (N >= 1)

    Returns:
        Immutable SieveTables

    Raises:
        DomainError: If limit < 1
        ResourceLimitError: If limit exceeds MAX_SIEVE_LIMIT
    """
    _check_budget(limit)
    started = time.perf_counter()

    primes = np.flatnonzero(_prime_mask(limit))
    phi = np.arange(limit + 1, dtype=np.int32)
    mu = np.ones(limit + 1, dtype=np.int8)
    omega = np.zeros(limit + 1, dtype=np.int8)
    spf = np.zeros(limit + 1, dtype=np.int32)
    mu[0] = 0
    spf[1] = 1

    for p in primes.tolist():
        multiples = phi[p::p]
        multiples -= multiples // p
        omega[p::p] += 1
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
        unset = spf[p::p]
        unset[unset == 0] = p

    for table in (phi, mu, omega, spf):
        table.flags.writeable = False

    logger.debug("Built sieves up to %d (%d primes) in %.3fs", limit, primes.size, time.perf_counter() - started)
    return SieveTables(limit=limit, phi=phi, mu=mu, omega=omega, spf=spf)


@lru_cache(maxsize=4)
def _cached_sieves(limit: int) -> SieveTables:
    return build_sieves(limit)


def default_sieves() -> SieveTables:
    """Process-wide sieve tables at the configured limit (FORD_SIEVE_LIMIT or the default)."""
    return _cached_sieves(get_sieve_limit())


def mobius_sieve(limit: int) -> np.ndarray:
    """Moebius values only, for long partial sums where the other tables are not needed."""
    _check_budget(limit)
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in np.flatnonzero(_prime_mask(limit)).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


@dataclass(frozen=True, eq=False)
class ArithmeticBlock:
    """omega and mu for a contiguous run of integers n[0], ..., n[-1]."""

    n: np.ndarray
    omega: np.ndarray
    mu: np.ndarray


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    return np.flatnonzero(_prime_mask(limit)).tolist()


def sieve_segment(lo: int, hi: int, primes: list[int] | None = None) -> ArithmeticBlock:
    """Segmented sieve of omega and mu over lo <= n < hi.

    Args:
        lo: First integer of the segment (lo >= 1)
        hi: One past the last integer
        primes: All primes up to isqrt(hi - 1); computed when omitted

    Raises:
        DomainError: If the segment is empty or starts below 1
    """
    if lo < 1 or hi <= lo:
        raise DomainError(f"Segment needs 1 <= lo < hi, got [{lo}, {hi})")
    if primes is None:
        primes = primes_up_to(math.isqrt(hi - 1))

    n = np.arange(lo, hi, dtype=np.int64)
    residual = n.copy()
    omega = np.zeros(n.size, dtype=np.int8)
    mu = np.ones(n.size, dtype=np.int8)
    for p in primes:
        start = -lo % p
        omega[start::p] += 1
        mu[start::p] *= -1
        mu[-lo % (p * p) :: p * p] = 0
        multiples = residual[start::p]
        divisible = np.ones(multiples.size, dtype=bool)
        while divisible.any():
            multiples[divisible] //= p
            divisible = multiples % p == 0

    # What remains above 1 is a single prime larger than sqrt(hi).
    large = residual > 1
    omega[large] += 1
    mu[large] *= -1
    return ArithmeticBlock(n=n, omega=omega, mu=mu)


def iter_blocks(m: int, sieves: SieveTables | None = None) -> Iterator[ArithmeticBlock]:
    """omega and mu over 1 <= n <= m, in blocks.

    The first block is a view into the sieve tables; the range beyond the sieve
    limit is covered by segments of at most max(limit, MIN_SEGMENT_SIZE) entries,
    so memory stays bounded for any m.

    Raises:
        DomainError: If m < 1
    """
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    tables = sieves or default_sieves()
    head = min(m, tables.limit)
    yield ArithmeticBlock(n=np.arange(1, head + 1, dtype=np.int64), omega=tables.omega[1 : head + 1], mu=tables.mu[1 : head + 1])
    if m == head:
        return

    size = max(tables.limit, MIN_SEGMENT_SIZE)
    primes = primes_up_to(math.isqrt(m))
    logger.debug("Segmenting (%d, %d] in blocks of %d beyond the sieve limit", head, m, size)
    for lo in range(head + 1, m + 1, size):
        yield sieve_segment(lo, min(lo + size, m + 1), primes)


def squarefree_divisor_counts(limit: int, sieves: SieveTables | None = None) -> np.ndarray:
    """counts[j] = number of squarefree divisors of j for 0 <= j <= limit, by a divisor sieve over mu.

    Raises:
        DomainError: If limit < 1
    """
    mu = np.concatenate([block.mu for block in iter_blocks(limit, sieves)])
    counts = np.zeros(limit + 1, dtype=np.int64)
    for d in (np.flatnonzero(mu) + 1).tolist():
        counts[d::d] += 1
    return counts


def factorize(n: int, sieves: SieveTables | None = None) -> dict[int, int]:
    """Prime factorization of n as {prime: exponent}.

    Uses the smallest-prime-factor table when n is tabulated and trial division
    (sympy.factorint) otherwise.

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError(f"Cannot factor {n}; expected a positive integer")
    tables = sieves or default_sieves()
    if not tables.covers(n):
        return {int(p): int(e) for p, e in factorint(n).items()}

    factors: dict[int, int] = {}
    while n > 1:
        p = int(tables.spf[n])
        factors[p] = factors.get(p, 0) + 1
        n //= p
    return factors


def omega(n: int, sieves: SieveTables | None = None) -> int:
    """Number of distinct prime factors of n."""
    tables = sieves or default_sieves()
    if tables.covers(n):
        return int(tables.omega[n])
    return len(factorize(n, tables))


def mobius(n: int, sieves: SieveTables | None = None) -> int:
    tables = sieves or default_sieves()
    if tables.covers(n):
        return int(tables.mu[n])
    factors = factorize(n, tables)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def totient(n: int, sieves: SieveTables | None = None) -> int:
    tables = sieves or default_sieves()
    if tables.covers(n):
        return int(tables.phi[n])
    result = n
    for p in factorize(n, tables):
        result -= result // p
    return result


def divisors(n: int, sieves: SieveTables | None = None) -> list[int]:
    """All positive divisors of n in ascending order."""
    divs = [1]
    for p, e in factorize(n, sieves).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def coprime_factor_pairs(m: int) -> list[tuple[int, int]]:
    """All (p, q) with p * q = m, gcd(p, q) = 1 and p <= q, by ascending p.

    Enumerates candidate p directly up to sqrt(m); this is the brute-force
    oracle for the jump formula and deliberately avoids factorization.

    Raises:
        DomainError: If m < 1
    """
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    pairs = []
    for p in range(1, math.isqrt(m) + 1):
        if m % p == 0 and math.gcd(p, m // p) == 1:
            pairs.append((p, m // p))
    return pairs


def _squarefree_terms(n: int, sieves: SieveTables | None) -> list[tuple[int, int]]:
    # (d, mu(d)) for every squarefree divisor d of n
    terms = [(1, 1)]
    for p in factorize(n, sieves):
        terms += [(d * p, -sign) for d, sign in terms]
    return terms


def phi_x(x: int, n: int, sieves: SieveTables | None = None) -> int:
    """Count of j in {1, ..., x} with gcd(j, n) = 1.

    Evaluated exactly as sum over squarefree d | n of mu(d) * floor(x / d).
    x = 0 is accepted and gives 0.

    Args:
        x: Range bound (x >= 0)
        n: Fixed modulus (n >= 1)
        sieves: Optional tables used to factor n

    Returns:
        phi_x(x, n)

    Raises:
        DomainError: If x < 0 or n < 1
    """
    if x < 0 or n < 1:
        raise DomainError(f"phi_x needs x >= 0 and n >= 1, got x={x}, n={n}")
    return sum(sign * (x // d) for d, sign in _squarefree_terms(n, sieves))


def phi_x_values(x: np.ndarray, n: int, sieves: SieveTables | None = None) -> np.ndarray:
    """phi_x over an int64 array of x by the same divisor sum as phi_x."""
    x = np.asarray(x, dtype=np.int64)
    if n < 1 or (x.size and x.min() < 0):
        raise DomainError(f"phi_x needs x >= 0 and n >= 1, got n={n}")
    result = np.zeros(x.shape, dtype=np.int64)
    for d, sign in _squarefree_terms(n, sieves):
        result += sign * (x // d)
    return result


def phi_x_table(x_max: int, n: int) -> np.ndarray:
    """phi_x(x, n) for every 0 <= x <= x_max as an int64 array (index x)."""
    if x_max < 0 or n < 1:
        raise DomainError(f"phi_x_table needs x_max >= 0 and n >= 1, got x_max={x_max}, n={n}")
    table = np.zeros(x_max + 1, dtype=np.int64)
    coprime = np.gcd(np.arange(1, x_max + 1, dtype=np.int64), n) == 1
    np.cumsum(coprime, out=table[1:])
    return table


@dataclass(frozen=True)
class Constants:
    """High-precision constants used by the approximations.

    Attributes:
        zeta2: zeta(2) = pi^2 / 6
        euler_C: Euler's constant
        A: sum over n of mu(n) ln(n) / n^2, negative
    """

    zeta2: mpmath.mpf
    euler_C: mpmath.mpf
    A: mpmath.mpf


@lru_cache(maxsize=1)
def constants() -> Constants:
    """Constants at MP_PRECISION_BITS.

    A is evaluated through the Dirichlet-series identity
    sum mu(n) ln(n) n^-s = zeta'(s) / zeta(s)^2 at s = 2, which gives the
    value of the infinite series to working precision. constant_A() keeps the
    partial sum for comparison.
    """
    with mpmath.workprec(MP_PRECISION_BITS):
        zeta2 = mpmath.zeta(2)
        euler_C = +mpmath.euler
        a_value = mpmath.zeta(2, 1, 1) / zeta2**2
    return Constants(zeta2=zeta2, euler_C=euler_C, A=a_value)


def constant_A(precision_terms: int = CONSTANT_A_TERMS) -> mpmath.mpf:
    """Partial sum of mu(n) ln(n) / n^2 over n <= precision_terms.

    Terms are evaluated in double precision and summed with exact rounding;
    the truncation error is bounded by constant_A_tail_bound(precision_terms),
    which dominates the evaluation error.

    Raises:
        DomainError: If precision_terms < 1
        ResourceLimitError: If precision_terms exceeds the sieve budget
    """
    if precision_terms < 1:
        raise DomainError(f"precision_terms must be positive, got {precision_terms}")
    mu = mobius_sieve(precision_terms)
    n = np.flatnonzero(mu)
    n = n[n > 1]
    terms = mu[n] * np.log(n.astype(np.float64)) / n.astype(np.float64) ** 2
    with mpmath.workprec(MP_PRECISION_BITS):
        return mpmath.mpf(math.fsum(terms.tolist()))


def constant_A_tail_bound(precision_terms: int) -> float:
    """Upper bound on |A - constant_A(N)|: the tail sum of ln(n) / n^2 over n > N."""
    if precision_terms < 1:
        raise DomainError(f"precision_terms must be positive, got {precision_terms}")
    return (math.log(precision_terms) + 1) / precision_terms
