"""Runtime limits: the 64-bit working width and the dense-array memory budget."""

from __future__ import annotations

import os

from .errors import CapacityError

U64_MAX = 2**64 - 1

DEFAULT_MEM_CAP = 2**28
MEM_CAP_ENV = "SELECTOR_SIEVE_MEM_CAP"


def memory_cap() -> int:
    """Maximum number of entries a dense spectrum or sieve may allocate.

    Read from ``SELECTOR_SIEVE_MEM_CAP`` on every call so tests and the CLI can
    override it without reloading the package.
    """
    raw = os.environ.get(MEM_CAP_ENV)
    if not raw:
        return DEFAULT_MEM_CAP
    try:
        cap = int(raw, 0)
    except ValueError:
        raise ValueError(f"{MEM_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{MEM_CAP_ENV} must be positive, got {cap}")
    return cap


def check_capacity(entries: int, what: str = "interval") -> None:
    cap = memory_cap()
    if entries > cap:
        raise CapacityError(f"{what} needs {entries} entries, budget is {cap} ({MEM_CAP_ENV})")
