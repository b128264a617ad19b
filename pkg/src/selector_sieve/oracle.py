"""Brute-force reference routines.

Everything the selector modules claim is checked against this module, so it
deliberately imports nothing from them. The routines favour obviousness over
speed: trial division on the 6j +/- 1 wheel, a plain Eratosthenes sieve, a
strong-pseudoprime test with a fixed witness set, and Pollard-Brent rho for
cofactors that survive trial division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import U64_MAX, check_capacity
from .errors import FactorizationError

__all__ = [
    "MR_WITNESSES",
    "Factorization",
    "trial_is_prime",
    "is_prime",
    "factorize",
    "big_omega",
    "eratosthenes",
    "eratosthenes_crossings",
    "primes_upto",
]

# The first twelve primes form a deterministic witness set for every n < 3.3e24,
# which covers the whole unsigned 64-bit range.
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

TRIAL_BOUND = 10**6


def _wheel(start: int = 5):
    """Yield 5, 7, 11, 13, 17, 19, ... (numbers of the form 6j -/+ 1)."""
    d = start
    while True:
        yield d
        yield d + 2
        d += 6


def trial_is_prime(m: int) -> bool:
    """Primality by trial division: 2, 3, then 6j-1 and 6j+1 up to sqrt(m)."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    root = math.isqrt(m)
    for d in _wheel():
        if d > root:
            return True
        if m % d == 0:
            return False
    raise AssertionError("unreachable")


def is_prime(n: int) -> bool:
    """Deterministic strong-pseudoprime test for 0 <= n <= 2**64 - 1."""
    if n < 0 or n > U64_MAX:
        raise ValueError(f"{n} is outside the 64-bit working width")
    if n < 2:
        return False
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs with increasing primes."""

    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def omega(self) -> int:
        """Number of prime factors counted with multiplicity (big omega)."""
        return sum(e for _, e in self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self) -> str:
        return "*".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def _brent(n: int) -> int:
    """Return a non-trivial factor of the odd composite n."""
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationError(f"rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(m: int) -> Factorization:
    """Factor 2 <= m <= 2**64 - 1 (trial division to 10**6, rho beyond)."""
    if m < 2 or m > U64_MAX:
        raise ValueError(f"factorize needs 2 <= m <= 2**64 - 1, got {m}")
    found: dict[int, int] = {}
    n = m
    for p in (2, 3):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if n > 1 and not is_prime(n):
        for d in _wheel():
            if d > TRIAL_BOUND or d * d > n:
                break
            if n % d == 0:
                while n % d == 0:
                    found[d] = found.get(d, 0) + 1
                    n //= d
                if is_prime(n):
                    break
    if n > 1:
        rest: dict[int, int] = {}
        _split(n, rest)
        for p, e in rest.items():
            found[p] = found.get(p, 0) + e
    fact = Factorization(tuple(sorted(found.items())))
    if fact.value() != m:
        raise FactorizationError(f"factorization of {m} does not reconstruct: {fact}")
    return fact


def big_omega(m: int) -> int:
    if m == 1:
        return 0
    return factorize(m).omega()


def eratosthenes(limit: int) -> np.ndarray:
    """Boolean array ``s`` of length limit + 1 with ``s[i]`` true iff i is prime."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    check_capacity(limit + 1, "Eratosthenes sieve")
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return sieve


def eratosthenes_crossings(limit: int) -> int:
    """Number of cross-off writes the sieve above performs (its work measure)."""
    sieve = eratosthenes(math.isqrt(limit))
    return sum((limit - p * p) // p + 1 for p in np.flatnonzero(sieve).tolist())


def primes_upto(limit: int) -> list[int]:
    return np.flatnonzero(eratosthenes(limit)).tolist()
