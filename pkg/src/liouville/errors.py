"""Exception hierarchy shared by the engines and the command line."""

from __future__ import annotations


class LiouvilleError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 4


# algebra
class ZeroDenominator(LiouvilleError, ZeroDivisionError):
    pass


class UnsupportedPoleField(LiouvilleError):
    """A computation needs algebraic numbers beyond rationals plus square roots."""


# odeforms
class DegenerateSystem(LiouvilleError):
    pass


class ZeroAlpha(LiouvilleError):
    pass


class NotFuchsian(LiouvilleError):
    pass


class WrongSingularSet(LiouvilleError):
    pass


# kovacic
class DegreeBoundExceeded(LiouvilleError):
    """Some candidate degree exceeded the configured cap and nothing else succeeded."""

    def __init__(self, message: str, skipped: list[int] | None = None):
        super().__init__(message)
        self.skipped = list(skipped or [])


class UnclassifiableWitness(LiouvilleError):
    pass


class NotRationalWitness(LiouvilleError):
    pass


# kimura
class FuchsViolation(LiouvilleError):
    pass


# celestial
class CollisionSingularity(LiouvilleError):
    pass


class ZeroKappa(LiouvilleError):
    pass


class ZeroOmega(LiouvilleError):
    pass


class NoSignChange(LiouvilleError):
    pass


class NotCritical(LiouvilleError):
    pass


class NonNegativeEnergy(LiouvilleError):
    pass


# dynamics
class DynamicsError(LiouvilleError):
    pass


class StepUnderflow(DynamicsError):
    pass


class EscapeDetected(DynamicsError):
    pass


# cli
class ParseError(LiouvilleError):
    exit_code = 3

    def __init__(self, message: str, position: int, expected: set[str] | frozenset[str] = frozenset()):
        self.position = position
        self.expected = frozenset(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)
