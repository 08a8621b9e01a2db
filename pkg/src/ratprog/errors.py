"""Exception hierarchy shared across the package."""


class RatProgError(Exception):
    """Base class for every error raised by ratprog."""


class ZeroInverse(RatProgError, ZeroDivisionError):
    def __init__(self, message="0 has no multiplicative inverse", index=None):
        super().__init__(message)
        self.index = index


class DependentInput(RatProgError, ValueError):
    """{1, F, G} is linearly dependent over Q."""


class ExpressionSyntaxError(RatProgError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DivisionByZeroFunction(RatProgError, ZeroDivisionError):
    """An expression divides by a rational function that simplifies to 0."""


class UnsupportedExponent(RatProgError, ValueError):
    pass


class NonpositiveEpsilon(RatProgError, ValueError):
    pass


class PrimeMismatch(RatProgError, ValueError):
    pass


class NotPrime(RatProgError, ValueError):
    pass


class BadPrime(RatProgError):
    """The prime is one of the finitely many excluded for (F, G)."""


class PrimeTooLarge(RatProgError):
    pass


class RoundingFailure(RatProgError, ArithmeticError):
    """A floating character-sum count did not land near an integer."""


class InsufficientData(RatProgError, ValueError):
    pass


class BoundViolation(RatProgError, AssertionError):
    """An inequality that must hold unconditionally failed."""


class IdentityFailure(RatProgError, AssertionError):
    """Two symbolic routes to the same object disagree."""
