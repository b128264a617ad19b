"""Number-theoretic analyses built on the selector spectra.

Twin-prime classes, the no-triplet check, higher-order ("Nth order") odd
primes, the Fermat-number search, prime-exponent coordinates and interval
density statistics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .config import U64_MAX, check_capacity
from .errors import CapacityError, InvariantViolation, SelectorOverflowError, UnsupportedExponent
from .selector_core import checked
from .sieve_engine import SpectrumS6, build_s6_spectrum, is_composite_order, primes_via_s2, primes_via_s6

__all__ = [
    "TwinClass",
    "OrderClass",
    "PrimeCoordinates",
    "FermatReport",
    "DensityStats",
    "TripletReport",
    "classify_twin",
    "classify_twins",
    "verify_no_triplets",
    "order_of",
    "generate_mN_hits",
    "fermat_check",
    "prime_coords",
    "coords_mul",
    "coords_pow",
    "density_stats",
    "pnt_ratio",
    "bertrand_check",
    "goldbach_pair",
]


class TwinClass(enum.Enum):
    """How many of 6n - 1, 6n + 1 are prime (N1 split by which one)."""

    N0 = "n0"
    N1_LOWER = "n1-lower"
    N1_UPPER = "n1-upper"
    N2 = "n2"


def _twin_class(k_minus: int, k_plus: int) -> TwinClass:
    if k_minus == 0 and k_plus == 0:
        return TwinClass.N2
    if k_minus == 0:
        return TwinClass.N1_LOWER
    if k_plus == 0:
        return TwinClass.N1_UPPER
    return TwinClass.N0


def classify_twin(n: int) -> TwinClass:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    spec = build_s6_spectrum(n, n)
    return _twin_class(spec.K_minus(n), spec.K_plus(n))


def classify_twins(spectrum: SpectrumS6) -> list[TwinClass]:
    """Classes for every n of an already built spectrum, in order."""
    return [_twin_class(km, kp) for km, kp in zip(spectrum.k_minus.tolist(), spectrum.k_plus.tolist())]


@dataclass(frozen=True)
class TripletReport:
    """Outcome of the no-triplet check.

    ``flanks`` holds one ``(6n-1, 6n+1, 6n+3, 2n+1)`` entry per twin pair of
    the 6n +/- 1 form: the odd number after the pair is 3 * (2n + 1).
    """

    limit: int
    exempt: tuple[int, int, int] | None
    triplets: tuple[tuple[int, int, int], ...]
    flanks: tuple[tuple[int, int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.triplets

    @property
    def twin_count(self) -> int:
        return len(self.flanks)


def verify_no_triplets(limit: int) -> TripletReport:
    """Look for three consecutive odd primes p, p+2, p+4 up to ``limit``.

    {3, 5, 7} is detected and exempted; any other triplet is reported and
    makes ``report.ok`` false.
    """
    if limit < 10:
        raise ValueError(f"limit must be >= 10, got {limit}")
    primes = primes_via_s6(limit)
    is_p = np.zeros(limit + 5, dtype=bool)
    is_p[primes] = True
    odd = np.flatnonzero(is_p[3:limit - 3] & is_p[5:limit - 1] & is_p[7:limit + 1]) + 3
    exempt = None
    triplets = []
    for p in odd.tolist():
        if p == 3:
            exempt = (3, 5, 7)
        elif p % 2 == 1:
            triplets.append((p, p + 2, p + 4))
    flanks = []
    for n in range(1, (limit + 1) // 6 + 1):
        lo, hi = 6 * n - 1, 6 * n + 1
        if hi <= limit and is_p[lo] and is_p[hi]:
            flank = 6 * n + 3
            if flank % 3:
                raise InvariantViolation(f"{flank} is not divisible by 3")
            flanks.append((lo, hi, flank, flank // 3))
    return TripletReport(limit, exempt, tuple(triplets), tuple(flanks))


@dataclass(frozen=True)
class OrderClass:
    """``order`` is the maximal number of non-unit factors of m (big omega)."""

    m: int
    order: int
    factors: tuple[int, ...] = field(default=(), compare=False)


def order_of(m: int) -> OrderClass:
    """Generalized prime order of an odd m >= 3; order 1 means conventionally prime."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"order_of needs an odd m >= 3, got {m}")
    fact = oracle.factorize(m)
    flat = tuple(p for p, e in fact.factors for _ in range(e))
    if math.prod(flat) != m or any(p < 3 for p in flat):
        raise InvariantViolation(f"decomposition of {m} into {flat} is inconsistent")
    return OrderClass(m, len(flat), flat)


def generate_mN_hits(N: int, limit: int) -> list[int]:
    """Sorted odd m <= limit that equal some product (2a_1+1)...(2a_N+1), a_i >= 1.

    Tuples are enumerated with non-decreasing a_i, the N-variable restricted
    scan.  The result is exactly the odd m <= limit with at least N prime
    factors counted with multiplicity.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    check_capacity(limit // 2, "m_N hit set")
    hits: set[int] = set()

    def walk(depth: int, min_factor: int, product: int) -> None:
        if depth == N:
            hits.add(product)
            return
        remaining = N - depth
        f = min_factor
        while product * f**remaining <= limit:
            walk(depth + 1, f, product * f)
            f += 2

    walk(0, 3, 1)
    return sorted(hits)


@dataclass(frozen=True)
class FermatReport:
    q: int
    r: int
    target_k: int
    fermat_number: int
    prime: bool
    witness: tuple[int, int] | None
    factors: tuple[int, int] | None
    search_effort: int

    @property
    def verdict(self) -> str:
        return "PRIME" if self.prime else "COMPOSITE"


def fermat_check(q: int) -> FermatReport:
    """Search for (a, b) with 2ab + a + b == 2**(2**q - 1), i.e. a split of F(q).

    a runs upward from 1; a is a witness iff 2a + 1 divides F(q).  The search
    ends at the divisor-pair bound (2a + 1)**2 > F(q).  The witness is
    reported as (min, max).
    """
    if q < 0:
        raise ValueError(f"q must be >= 0, got {q}")
    if q >= 6:
        raise UnsupportedExponent(f"F({q}) = 2**{2**q} + 1 exceeds the 64-bit working width")
    r = 2**q
    target_k = 2 ** (r - 1)
    fermat = checked(2 * target_k + 1)
    a = 1
    effort = 0
    while (2 * a + 1) ** 2 <= fermat:
        effort += 1
        if fermat % (2 * a + 1) == 0:
            b = (target_k - a) // (2 * a + 1)
            if 2 * a * b + a + b != target_k:
                raise InvariantViolation(f"witness ({a}, {b}) does not reproduce k={target_k}")
            lo, hi = sorted((a, b))
            return FermatReport(q, r, target_k, fermat, False, (lo, hi),
                                (2 * lo + 1, 2 * hi + 1), effort)
        a += 1
    return FermatReport(q, r, target_k, fermat, True, None, None, effort)


@dataclass(frozen=True)
class PrimeCoordinates:
    """Sparse prime-exponent vector, stored as sorted ``(prime, exponent)`` pairs.

    Keyed by the prime itself; :meth:`by_index` gives the 1-based prime-index
    view (index 1 = prime 2) and :meth:`vector` the dense form.
    """

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, exponents: dict[int, int]) -> PrimeCoordinates:
        for p, e in exponents.items():
            if e < 0 or e > U64_MAX:
                raise SelectorOverflowError(f"exponent {e} of prime {p} is out of range")
        return cls(tuple(sorted((p, e) for p, e in exponents.items() if e)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def value(self) -> int:
        """Reconstructed integer; may exceed 64 bits."""
        out = 1
        for p, e in self.terms:
            out *= p**e
        return out

    def by_index(self) -> dict[int, int]:
        if not self.terms:
            return {}
        largest = self.terms[-1][0]
        try:
            sieve = oracle.eratosthenes(largest)
        except CapacityError:
            raise CapacityError(f"prime index of {largest} needs a sieve beyond the memory budget") from None
        prefix = np.cumsum(sieve)
        return {int(prefix[p]): e for p, e in self.terms}

    def vector(self, length: int | None = None) -> tuple[int, ...]:
        idx = self.by_index()
        size = max(idx, default=0) if length is None else length
        return tuple(idx.get(i, 0) for i in range(1, size + 1))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{p}:{e}" for p, e in self.terms) + "}"


def prime_coords(n: int) -> PrimeCoordinates:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    checked(n)
    if n == 1:
        return PrimeCoordinates()
    return PrimeCoordinates(oracle.factorize(n).factors)


def coords_mul(x: PrimeCoordinates, y: PrimeCoordinates) -> PrimeCoordinates:
    """Coordinates of the product: exponent-wise sum."""
    out = x.as_dict()
    for p, e in y.terms:
        out[p] = out.get(p, 0) + e
    return PrimeCoordinates.from_dict(out)


def coords_pow(x: PrimeCoordinates, e: int) -> PrimeCoordinates:
    """Coordinates of x**e: exponent-wise scalar multiple."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return PrimeCoordinates.from_dict({p: k * e for p, k in x.terms})


@dataclass(frozen=True)
class DensityStats:
    lo: int
    hi: int
    primes: tuple[int, ...]
    gaps: tuple[int, ...]
    twin_pairs: tuple[tuple[int, int], ...]

    @property
    def prime_count(self) -> int:
        return len(self.primes)

    def _extreme(self, pick) -> tuple[int, int] | None:
        if not self.gaps:
            return None
        i = self.gaps.index(pick(self.gaps))
        return self.primes[i], self.primes[i + 1]

    @property
    def min_gap(self) -> int | None:
        return min(self.gaps) if self.gaps else None

    @property
    def max_gap(self) -> int | None:
        return max(self.gaps) if self.gaps else None

    @property
    def min_gap_pair(self) -> tuple[int, int] | None:
        return self._extreme(min)

    @property
    def max_gap_pair(self) -> tuple[int, int] | None:
        return self._extreme(max)


DENSITY_SPAN = 10**7


def density_stats(lo: int, hi: int) -> DensityStats:
    """Primes, consecutive gaps and twin pairs inside ``[lo, hi]``.

    Each candidate is tested with the deterministic 64-bit primality test, so
    the interval may sit anywhere below 2**64 but must span at most 10**7.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    checked(hi)
    if hi - lo > DENSITY_SPAN:
        raise CapacityError(f"interval span {hi - lo} exceeds {DENSITY_SPAN}")
    found = [2] if lo <= 2 <= hi else []
    start = max(3, lo | 1)
    found.extend(m for m in range(start, hi + 1, 2) if oracle.is_prime(m))
    gaps = tuple(b - a for a, b in zip(found, found[1:]))
    twins = tuple((a, b) for a, b in zip(found, found[1:]) if b - a == 2)
    return DensityStats(lo, hi, tuple(found), gaps, twins)


def pnt_ratio(x: int) -> float:
    """pi(x) / (x / ln x), with pi(x) counted by the S2 selector sieve."""
    if x < 100:
        raise ValueError(f"x must be >= 100, got {x}")
    return len(primes_via_s2(x)) / (x / math.log(x))


def bertrand_check(n: int) -> int:
    """Smallest prime p with n < p < 2n, cross-checked against the selector."""
    if not 2 <= n <= 10**7:
        raise ValueError(f"n must lie in [2, 10**7], got {n}")
    for p in range(n + 1, 2 * n):
        if oracle.is_prime(p):
            if p % 2 == 1 and is_composite_order((p - 1) // 2) is not None:
                raise InvariantViolation(f"selector hits the order number of prime {p}")
            return p
    raise InvariantViolation(f"no prime strictly between {n} and {2 * n}")


def goldbach_pair(even: int) -> tuple[int, int] | None:
    """Smallest-first prime pair summing to ``even``, or None if there is none."""
    if even < 4 or even % 2:
        raise ValueError(f"expected an even number >= 4, got {even}")
    for p in range(2, even // 2 + 1):
        if oracle.is_prime(p) and oracle.is_prime(even - p):
            return p, even - p
    return None
