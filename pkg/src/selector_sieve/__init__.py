"""Prime selector polynomials, their multiplicity spectra and a brute-force oracle.

``k = 2ab + a + b`` (a, b >= 1) hits exactly the order numbers of odd
composites ``m = 2k + 1``; the values it jumps over are the odd primes.
The 6n +/- 1 and 4n +/- 1 families work the same way with four bilinear
selectors each.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapacityError,
    FactorizationError,
    InvariantViolation,
    SelectorOverflowError,
    SelectorSieveError,
    UnsupportedExponent,
)
from .selector_core import (  # noqa: E402
    S4Branch,
    S6Branch,
    ScanMode,
    ScanPair,
    composite_m,
    residue_dispatch,
    s4_values,
    s6_values,
    selector_k,
)
from .sieve_engine import (  # noqa: E402
    build_s2_spectrum,
    build_s6_spectrum,
    primes_via_s2,
    primes_via_s4,
    primes_via_s6,
)
