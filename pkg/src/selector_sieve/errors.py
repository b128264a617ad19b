"""Exception types shared across the package."""

from __future__ import annotations


class SelectorSieveError(Exception):
    """Base class for all package errors."""


class SelectorOverflowError(SelectorSieveError, OverflowError):
    """A value left the unsigned 64-bit working width."""


class CapacityError(SelectorSieveError, MemoryError):
    """An interval exceeds the configured memory budget."""


class UnsupportedExponent(SelectorSieveError, ValueError):
    """Fermat exponent whose number does not fit the working width."""


class InvariantViolation(SelectorSieveError, AssertionError):
    """A selector result disagreed with the oracle, or a structural check failed."""


class FactorizationError(SelectorSieveError, RuntimeError):
    """The oracle could not complete a factorization."""
