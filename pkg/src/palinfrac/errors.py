"""Exception types shared across the package.

Every error raised on purpose by the library derives from PalinfracError,
so callers (in particular the CLI) can distinguish our failures from bugs.
"""

from __future__ import annotations


class PalinfracError(Exception):
    """Base class for all library errors."""


class ParseError(PalinfracError):
    """Input document is malformed or violates a sequence invariant."""


class InsufficientCoefficients(PalinfracError):
    """More coefficient pairs are required than were supplied."""


class NotNormalized(PalinfracError):
    """The sequence does not end its preperiodic block with the last periodic pair."""


class IndexOutOfRange(PalinfracError):
    """A split or block length lies outside the valid range."""


class DegenerateRelation(PalinfracError):
    """A quadratic relation collapsed (zero coefficients or square discriminant)."""


class DivisionByZero(PalinfracError, ZeroDivisionError):
    """A denominator vanished at the evaluation point."""


class BranchAmbiguity(PalinfracError):
    """Neither or both quadratic roots qualify as the upper-half-plane branch."""


class NumericInstability(PalinfracError):
    """An asymptotic fit failed to converge."""


class NotAnMFunction(PalinfracError):
    """A Laurent series violates the normalization or positivity of m-functions."""


class InsufficientOrder(PalinfracError):
    """The Laurent series is too short for the requested recovery depth."""
