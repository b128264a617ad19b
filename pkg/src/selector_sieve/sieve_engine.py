"""Multiplicity spectra and selector-based prime sieves.

Every selector here is a bilinear form ``c*k1*k2 + s1*k1 + s2*k2``.  Fixing the
smaller index turns the hits into an arithmetic progression in the larger one,
so a spectrum over ``[lo, hi]`` is filled with one strided slice increment per
value of the smaller index.  That index only runs to about ``sqrt(hi / c)``.

Counters are dense ``uint32`` arrays sized by the memory budget in
:mod:`selector_sieve.config`.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import oracle
from .config import U64_MAX, check_capacity
from .errors import InvariantViolation
from .selector_core import S4Branch, S6Branch, ScanMode, ScanPair, checked

__all__ = [
    "SpectrumS2",
    "SpectrumS6",
    "ScanBounds",
    "BenchEntry",
    "BenchReport",
    "bilinear_counts",
    "branch_counts",
    "build_s2_spectrum",
    "build_s6_spectrum",
    "build_s4_spectrum",
    "scan_bounds",
    "single_k_scan",
    "is_composite_order",
    "composite_order_witnesses",
    "primes_via_s2",
    "primes_via_s6",
    "primes_via_s4",
    "bench_selector_sieves",
]


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


def _minor_bound(coef: int, s1: int, s2: int, hi: int) -> int:
    """Largest j with coef*j*j + (s1+s2)*j <= hi (the diagonal value at j)."""
    j = max(1, math.isqrt(hi // coef) + 2)
    while j >= 1 and coef * j * j + (s1 + s2) * j > hi:
        j -= 1
    return j


def _fill(counts: np.ndarray, lo: int, hi: int, coef: int, s1: int, s2: int,
          mode: ScanMode, j_start: int, j_stop: int) -> None:
    for j in range(j_start, j_stop):
        # k2 = j, k1 >= j: value = k1*(coef*j + s1) + s2*j
        step = coef * j + s1
        offset = s2 * j
        first = max(j, _ceil_div(lo - offset, step))
        last = (hi - offset) // step
        if first <= last:
            start = first * step + offset - lo
            counts[start : last * step + offset - lo + 1 : step] += 1
        if mode is ScanMode.FULL:
            # k1 = j, k2 > j: value = k2*(coef*j + s2) + s1*j
            step = coef * j + s2
            offset = s1 * j
            first = max(j + 1, _ceil_div(lo - offset, step))
            last = (hi - offset) // step
            if first <= last:
                start = first * step + offset - lo
                counts[start : last * step + offset - lo + 1 : step] += 1


def bilinear_counts(coef: int, s1: int, s2: int, lo: int, hi: int,
                    mode: ScanMode = ScanMode.RESTRICTED, workers: int = 1) -> np.ndarray:
    """Hit counts of ``coef*k1*k2 + s1*k1 + s2*k2`` over ``[lo, hi]``.

    RESTRICTED visits ``1 <= k2 <= k1``; FULL visits every ordered pair.  With
    ``workers > 1`` the smaller-index range is split across threads and the
    partial counters are summed, which gives bit-identical output.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    checked(hi)
    check_capacity(hi - lo + 1, "spectrum interval")
    mode = ScanMode(mode)
    j_max = _minor_bound(coef, s1, s2, hi)
    counts = np.zeros(hi - lo + 1, dtype=np.uint32)
    if workers <= 1 or j_max < 2 * workers:
        _fill(counts, lo, hi, coef, s1, s2, mode, 1, j_max + 1)
    else:
        edges = np.linspace(1, j_max + 1, workers + 1).astype(int).tolist()
        parts = [np.zeros_like(counts) for _ in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_fill, part, lo, hi, coef, s1, s2, mode, a, b)
                for part, a, b in zip(parts, edges[:-1], edges[1:])
            ]
            for f in futures:
                f.result()
        for part in parts:
            counts += part
    counts.flags.writeable = False
    return counts


def branch_counts(branch: S6Branch | S4Branch, lo: int, hi: int,
                  mode: ScanMode = ScanMode.FULL, workers: int = 1) -> np.ndarray:
    """Hit counts of a single 6n+/-1 or 4n+/-1 branch over ``[lo, hi]``."""
    return bilinear_counts(branch.MODULUS, branch.sign_k1, branch.sign_k2, lo, hi, mode, workers)


@dataclass(frozen=True)
class SpectrumS2:
    """``counts[k - k_lo]`` is the number of scan pairs with 2ab + a + b == k."""

    k_lo: int
    k_hi: int
    counts: np.ndarray
    mode: ScanMode = ScanMode.RESTRICTED

    def K(self, k: int) -> int:
        if not self.k_lo <= k <= self.k_hi:
            raise IndexError(f"k={k} outside [{self.k_lo}, {self.k_hi}]")
        return int(self.counts[k - self.k_lo])

    @property
    def orders(self) -> np.ndarray:
        return np.arange(self.k_lo, self.k_hi + 1, dtype=np.uint64)

    def jumped_over(self) -> list[int]:
        """Order numbers with K = 0; 2k + 1 is an odd prime for each."""
        return (np.flatnonzero(self.counts == 0) + self.k_lo).tolist()

    def odd_primes(self) -> list[int]:
        return [2 * k + 1 for k in self.jumped_over()]

    def total_hits(self) -> int:
        return int(self.counts.sum(dtype=np.uint64))


def build_s2_spectrum(k_lo: int, k_hi: int, mode: ScanMode = ScanMode.RESTRICTED,
                      workers: int = 1) -> SpectrumS2:
    """Multiplicity K(k) of ``k = 2ab + a + b`` for every k in ``[k_lo, k_hi]``.

    Example (restricted scan)::

        >>> build_s2_spectrum(1, 17).counts.tolist()
        [0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1]
    """
    mode = ScanMode(mode)
    counts = bilinear_counts(2, 1, 1, k_lo, k_hi, mode, workers)
    return SpectrumS2(k_lo, k_hi, counts, mode)


@dataclass(frozen=True)
class SpectrumS6:
    """Per-n counts for 6n-1 (``k_minus``) and 6n+1 (``k_plus``)."""

    n_lo: int
    n_hi: int
    k_minus: np.ndarray
    k_plus: np.ndarray

    def _idx(self, n: int) -> int:
        if not self.n_lo <= n <= self.n_hi:
            raise IndexError(f"n={n} outside [{self.n_lo}, {self.n_hi}]")
        return n - self.n_lo

    def K_minus(self, n: int) -> int:
        return int(self.k_minus[self._idx(n)])

    def K_plus(self, n: int) -> int:
        return int(self.k_plus[self._idx(n)])

    def is_twin(self, n: int) -> bool:
        i = self._idx(n)
        return self.k_minus[i] == 0 and self.k_plus[i] == 0

    def twin_orders(self) -> list[int]:
        mask = (self.k_minus == 0) & (self.k_plus == 0)
        return (np.flatnonzero(mask) + self.n_lo).tolist()

    def rows(self):
        """Yield ``(n, K-, 6n-1, K+, 6n+1)`` for every n in range."""
        for i, (km, kp) in enumerate(zip(self.k_minus.tolist(), self.k_plus.tolist())):
            n = self.n_lo + i
            yield n, km, 6 * n - 1, kp, 6 * n + 1


def _plus_minus_pair(branch_family, n_lo: int, n_hi: int, minus_branch, workers: int):
    minus = branch_counts(minus_branch, n_lo, n_hi, ScanMode.FULL, workers)
    plus = (branch_counts(branch_family.PLUS_PLUS, n_lo, n_hi, ScanMode.RESTRICTED, workers)
            + branch_counts(branch_family.PLUS_MINUS, n_lo, n_hi, ScanMode.RESTRICTED, workers))
    plus.flags.writeable = False
    return minus, plus


def build_s6_spectrum(n_lo: int, n_hi: int, minus_branch: S6Branch = S6Branch.MINUS_A,
                      workers: int = 1) -> SpectrumS6:
    """K- from one 6n-1 branch under full scan; K+ from both 6n+1 branches restricted.

    Either 6n-1 branch gives the same K- because the two are mirror images
    under k1 <-> k2 and the full scan visits both orientations.
    """
    if minus_branch not in (S6Branch.MINUS_A, S6Branch.MINUS_B):
        raise ValueError("minus_branch must be MINUS_A or MINUS_B")
    minus, plus = _plus_minus_pair(S6Branch, n_lo, n_hi, minus_branch, workers)
    return SpectrumS6(n_lo, n_hi, minus, plus)


def build_s4_spectrum(n_lo: int, n_hi: int, minus_branch: S4Branch = S4Branch.MINUS_A,
                      workers: int = 1) -> SpectrumS6:
    """The 4n +/- 1 analogue of :func:`build_s6_spectrum` (same container type)."""
    if minus_branch not in (S4Branch.MINUS_A, S4Branch.MINUS_B):
        raise ValueError("minus_branch must be MINUS_A or MINUS_B")
    minus, plus = _plus_minus_pair(S4Branch, n_lo, n_hi, minus_branch, workers)
    return SpectrumS6(n_lo, n_hi, minus, plus)


@dataclass(frozen=True)
class ScanBounds:
    """Range of ``a`` worth scanning for a single order number k0.

    ``m1`` is the diagonal pivot (sqrt(1 + 2 k0) - 1) / 2 and ``m2`` the b = 1
    pivot (k0 - 1) / 3.  ``m1_floor`` is the smaller neighbour integer of m1 and
    ``m2_upper`` the strictly larger neighbour integer of m2, so a restricted
    scan of k0 runs over ``m1_floor <= a <= m2_upper - 1``.
    """

    k0: int
    m1: float
    m2: Fraction

    @property
    def m1_floor(self) -> int:
        return (math.isqrt(1 + 2 * self.k0) - 1) // 2

    @property
    def m2_upper(self) -> int:
        return math.floor(self.m2) + 1

    def a_range(self) -> range:
        return range(max(1, self.m1_floor), self.m2_upper)


def scan_bounds(k0: int) -> ScanBounds:
    if k0 < 4:
        raise ValueError(f"scan bounds need k0 >= 4, got {k0}")
    checked(k0)
    return ScanBounds(k0, (math.sqrt(1 + 2 * k0) - 1) / 2, Fraction(k0 - 1, 3))


def single_k_scan(k0: int) -> list[ScanPair]:
    """Every restricted pair (b <= a) hitting k0, found by scanning a over its bounds.

    This is the direct single-value scan: for each a, b = (k0 - a)/(2a + 1)
    must be a positive integer.  Costs about k0/3 steps; prefer
    :func:`composite_order_witnesses` for anything large.
    """
    if k0 < 4:
        return []
    hits = []
    for a in scan_bounds(k0).a_range():
        q, r = divmod(k0 - a, 2 * a + 1)
        if r == 0 and 1 <= q <= a:
            hits.append(ScanPair(a, q))
    return hits


def is_composite_order(k0: int) -> ScanPair | None:
    """Witness pair for k0 with the smallest a in full-scan terms, normalized to a >= b.

    Returns None exactly when 2*k0 + 1 is prime (or k0 < 4, i.e. 2*k0+1 <= 7).
    The search stops once (2a + 1)**2 exceeds 2*k0 + 1.
    """
    if k0 < 1:
        raise ValueError(f"k0 must be >= 1, got {k0}")
    m = 2 * checked(k0) + 1
    a = 1
    while (2 * a + 1) ** 2 <= m:
        b, r = divmod(k0 - a, 2 * a + 1)
        if r == 0 and b >= 1:
            return ScanPair(a, b).normalized()
        a += 1
    return None


def composite_order_witnesses(k0: int) -> list[ScanPair]:
    """All restricted pairs hitting k0, via divisor pairs of 2*k0 + 1."""
    if k0 < 1:
        raise ValueError(f"k0 must be >= 1, got {k0}")
    m = 2 * checked(k0) + 1
    out = []
    d = 3
    while d * d <= m:
        if m % d == 0:
            out.append(ScanPair((m // d - 1) // 2, (d - 1) // 2))
        d += 2
    return sorted(out)


def primes_via_s2(limit: int, workers: int = 1) -> list[int]:
    """All primes <= limit: 2, then 2k + 1 for every k >= 1 the selector jumps over."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    k_hi = (limit - 1) // 2
    if k_hi < 1:
        return [2]
    return [2] + build_s2_spectrum(1, k_hi, workers=workers).odd_primes()


def _merge_sides(seed: list[int], spectrum: SpectrumS6, modulus: int, limit: int) -> list[int]:
    n = np.arange(spectrum.n_lo, spectrum.n_hi + 1, dtype=np.int64)
    lower = modulus * n - 1
    upper = modulus * n + 1
    lower = lower[(spectrum.k_minus == 0) & (lower <= limit)]
    upper = upper[(spectrum.k_plus == 0) & (upper <= limit)]
    merged = np.union1d(lower, upper).tolist()
    return seed + merged


def primes_via_s6(limit: int, workers: int = 1) -> list[int]:
    """2 and 3, then every 6n-1 with K- = 0 and every 6n+1 with K+ = 0, up to limit."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    seed = [p for p in (2, 3) if p <= limit]
    n_hi = (limit + 1) // 6
    if n_hi < 1:
        return seed
    return _merge_sides(seed, build_s6_spectrum(1, n_hi, workers=workers), 6, limit)


def primes_via_s4(limit: int, workers: int = 1) -> list[int]:
    """2, then every 4n-1 and 4n+1 (n >= 1) the four 4n+/-1 selectors jump over."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    n_hi = (limit + 1) // 4
    if n_hi < 1:
        return [2]
    return _merge_sides([2], build_s4_spectrum(1, n_hi, workers=workers), 4, limit)


@dataclass(frozen=True)
class BenchEntry:
    method: str
    seconds: float
    count: int
    hits: int


@dataclass(frozen=True)
class BenchReport:
    limit: int
    entries: tuple[BenchEntry, ...]
    identical: bool

    def entry(self, method: str) -> BenchEntry:
        for e in self.entries:
            if e.method == method:
                return e
        raise KeyError(method)


def bench_selector_sieves(limit: int, workers: int = 1) -> BenchReport:
    """Time the three selector sieves against the Eratosthenes oracle.

    ``hits`` is the work measure: total selector hits for the selector
    sieves, cross-off writes for Eratosthenes.  Raises InvariantViolation
    unless all four prime lists are identical.
    """
    if limit < 100:
        raise ValueError(f"benchmark limit must be >= 100, got {limit}")

    results = {}
    entries = []

    t0 = time.perf_counter()
    spec2 = build_s2_spectrum(1, (limit - 1) // 2, workers=workers)
    primes = [2] + spec2.odd_primes()
    entries.append(BenchEntry("s2", time.perf_counter() - t0, len(primes), spec2.total_hits()))
    results["s2"] = primes

    for name, builder, modulus, seed in (
        ("s6", build_s6_spectrum, 6, [2, 3]),
        ("s4", build_s4_spectrum, 4, [2]),
    ):
        t0 = time.perf_counter()
        spec = builder(1, (limit + 1) // modulus, workers=workers)
        primes = _merge_sides(seed, spec, modulus, limit)
        elapsed = time.perf_counter() - t0
        hits = int(spec.k_minus.sum(dtype=np.uint64) + spec.k_plus.sum(dtype=np.uint64))
        entries.append(BenchEntry(name, elapsed, len(primes), hits))
        results[name] = primes

    t0 = time.perf_counter()
    primes = oracle.primes_upto(limit)
    elapsed = time.perf_counter() - t0
    entries.append(BenchEntry("oracle", elapsed, len(primes), oracle.eratosthenes_crossings(limit)))
    results["oracle"] = primes

    baseline = results["oracle"]
    identical = all(v == baseline for v in results.values())
    report = BenchReport(limit, tuple(entries), identical)
    if not identical:
        bad = [k for k, v in results.items() if v != baseline]
        raise InvariantViolation(f"selector sieves disagree with Eratosthenes at limit {limit}: {bad}")
    return report
