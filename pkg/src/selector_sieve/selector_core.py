"""Selector polynomials and their residue-class bookkeeping.

The central identity is ``2(2ab + a + b) + 1 = (2a + 1)(2b + 1)``: for
``a, b >= 1`` the order number ``k = 2ab + a + b`` only ever lands on odd
composites, and every odd composite is reached.  The 6n +/- 1 and 4n +/- 1
families follow from the same form conservation with a larger modulus.

All arithmetic is checked against the unsigned 64-bit working width; leaving
it raises :class:`SelectorOverflowError` instead of wrapping.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .config import U64_MAX
from .errors import SelectorOverflowError

__all__ = [
    "ScanMode",
    "ScanPair",
    "S6Branch",
    "S4Branch",
    "Selection",
    "Dispatch",
    "Neighbor",
    "checked",
    "selector_k",
    "composite_m",
    "selector_k_sign_variant",
    "s6_values",
    "s4_values",
    "residue_dispatch",
    "is_form_6n3",
    "six_neighbor_check",
]


def checked(value: int) -> int:
    """Return ``value`` if it lies in [0, 2**64 - 1], else raise."""
    if value < 0 or value > U64_MAX:
        raise SelectorOverflowError(f"{value} is outside the unsigned 64-bit range")
    return value


class ScanMode(enum.Enum):
    """FULL visits every ordered pair; RESTRICTED only pairs with b <= a."""

    FULL = "full"
    RESTRICTED = "restricted"


@dataclass(frozen=True, order=True)
class ScanPair:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise ValueError(f"selector parameters must be >= 1, got ({self.a}, {self.b})")
        checked(self.a)
        checked(self.b)

    def normalized(self) -> ScanPair:
        """Restricted-scan orientation, a >= b."""
        return self if self.a >= self.b else ScanPair(self.b, self.a)

    def in_scan(self, mode: ScanMode) -> bool:
        return mode is ScanMode.FULL or self.b <= self.a


class _BranchSigns:
    MODULUS: int

    @property
    def sign_k1(self) -> int:
        return self.value[0]

    @property
    def sign_k2(self) -> int:
        return self.value[1]

    @property
    def target_sign(self) -> int:
        return self.value[2]

    def factors(self, k1: int, k2: int) -> tuple[int, int]:
        """The two non-unit factors whose product is ``MODULUS*n + target_sign``.

        For the minus branches the factor signs are the linear-term signs flipped.
        """
        t = self.target_sign
        return self.MODULUS * k1 + t * self.sign_k1, self.MODULUS * k2 + t * self.sign_k2


class S6Branch(_BranchSigns, enum.Enum):
    """The four bilinear selectors of the 6n +/- 1 family.

    Each member carries ``(sign_k1, sign_k2, target_sign)`` so that
    ``n = 6 k1 k2 + sign_k1 k1 + sign_k2 k2`` and ``6n + target_sign`` is the
    product returned by :meth:`factors`; e.g. MINUS_A gives
    ``6(6 k1 k2 - k1 + k2) - 1 = (6 k1 + 1)(6 k2 - 1)``.
    PLUS_PLUS and PLUS_MINUS select 6n+1; MINUS_A and MINUS_B select 6n-1
    and are mirror images of each other under k1 <-> k2.
    """

    PLUS_PLUS = (1, 1, 1)
    PLUS_MINUS = (-1, -1, 1)
    MINUS_A = (-1, 1, -1)
    MINUS_B = (1, -1, -1)


S6Branch.MODULUS = 6


class S4Branch(_BranchSigns, enum.Enum):
    """Same layout as :class:`S6Branch` with modulus 4."""

    PLUS_PLUS = (1, 1, 1)
    PLUS_MINUS = (-1, -1, 1)
    MINUS_A = (-1, 1, -1)
    MINUS_B = (1, -1, -1)


S4Branch.MODULUS = 4


def _as_pair(pair: ScanPair | tuple[int, int]) -> ScanPair:
    return pair if isinstance(pair, ScanPair) else ScanPair(*pair)


def selector_k(pair: ScanPair | tuple[int, int]) -> int:
    """Order number ``2ab + a + b`` of the odd composite (2a+1)(2b+1).

    >>> selector_k((4, 2)), selector_k((7, 1))
    (22, 22)
    """
    p = _as_pair(pair)
    return checked(2 * p.a * p.b + p.a + p.b)


def composite_m(pair: ScanPair | tuple[int, int]) -> int:
    """The odd composite ``4ab + 2(a + b) + 1``."""
    p = _as_pair(pair)
    return checked(4 * p.a * p.b + 2 * (p.a + p.b) + 1)


def selector_k_sign_variant(a: int, b: int, sign_a: int, sign_b: int) -> int:
    """``2ab + sign_a*a + sign_b*b`` for positive a, b.

    The (-, -) variant over a, b >= 2 covers the same values as
    :func:`selector_k` over a, b >= 1.  Mixed signs scanned naively over
    a, b >= 1 produce a useless mix of prime and composite order numbers.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    if sign_a not in (1, -1) or sign_b not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    value = 2 * a * b + sign_a * a + sign_b * b
    checked(abs(value))
    return value


def _bilinear(modulus: int, branch: S6Branch | S4Branch, k1: int, k2: int) -> int:
    if k1 < 1 or k2 < 1:
        raise ValueError(f"k1 and k2 must be >= 1, got ({k1}, {k2})")
    return checked(modulus * k1 * k2 + branch.sign_k1 * k1 + branch.sign_k2 * k2)


def s6_values(branch: S6Branch, k1: int, k2: int) -> int:
    """Order number n of the 6n +/- 1 composite selected by ``branch`` at (k1, k2)."""
    return _bilinear(6, S6Branch(branch), k1, k2)


def s4_values(branch: S4Branch, k1: int, k2: int) -> int:
    """Order number n of the 4n +/- 1 composite selected by ``branch`` at (k1, k2)."""
    return _bilinear(4, S4Branch(branch), k1, k2)


class Selection(enum.Enum):
    SIX_N_PLUS_1 = "6n+1"
    SIX_N_MINUS_1 = "6n-1"
    NONE = "none"


@dataclass(frozen=True)
class Dispatch:
    selection: Selection
    n: int | None = None

    def value(self) -> int | None:
        """The 6n +/- 1 number this dispatch selects, if any."""
        if self.selection is Selection.SIX_N_PLUS_1:
            return 6 * self.n + 1
        if self.selection is Selection.SIX_N_MINUS_1:
            return 6 * self.n - 1
        return None


def residue_dispatch(pair: ScanPair | tuple[int, int]) -> Dispatch:
    """Route an S2 pair to the 6n+1 or 6n-1 selector by (a mod 3, b mod 3).

    Residues (0,0) and (2,2) select 6n+1 with n = k/3; (0,2) and (2,0) select
    6n-1 with n = (k+1)/3.  Every other residue pair yields a composite of the
    excluded form 6n+3.
    """
    p = _as_pair(pair)
    k = selector_k(p)
    ra, rb = p.a % 3, p.b % 3
    if (ra, rb) in ((0, 0), (2, 2)):
        return Dispatch(Selection.SIX_N_PLUS_1, k // 3)
    if (ra, rb) in ((0, 2), (2, 0)):
        return Dispatch(Selection.SIX_N_MINUS_1, (k + 1) // 3)
    return Dispatch(Selection.NONE)


def is_form_6n3(m: int) -> int | None:
    """Return n when ``m == 6n + 3`` (n >= 0), else None."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"expected an odd positive integer, got {m}")
    if m % 6 == 3:
        return (m - 3) // 6
    return None


class Neighbor(enum.Enum):
    CANDIDATE_PRIME = "candidate-prime"
    EXCLUDED_COMPOSITE = "excluded-composite"


def six_neighbor_check(m: int) -> Neighbor:
    """Candidate prime iff 6 divides m - 1 or m + 1 (necessary, not sufficient)."""
    if m < 5 or m % 2 == 0:
        raise ValueError(f"expected an odd integer >= 5, got {m}")
    if (m - 1) % 6 == 0 or (m + 1) % 6 == 0:
        return Neighbor.CANDIDATE_PRIME
    return Neighbor.EXCLUDED_COMPOSITE
