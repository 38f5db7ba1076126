"""Exception hierarchy shared by every module in the package."""


class SatrankError(ValueError):
    """Base class for all domain errors raised by satrank."""


class DimensionMismatch(SatrankError):
    pass


class SingularMatrix(SatrankError):
    pass


class SingularAtRoot(SatrankError):
    """The Hermitian form is degenerate because the angle is an Alexander root."""


class AngleOne(SatrankError):
    pass


class InvariantViolation(SatrankError):
    pass


class NonzeroWinding(SatrankError):
    pass


class SingularCover(SatrankError):
    pass


class UnknownCurve(SatrankError, KeyError):
    pass


class ZeroQ(SatrankError):
    pass


class NotAlexanderOne(SatrankError):
    pass


class InvalidTorusParams(SatrankError):
    pass


class DomainError(SatrankError):
    pass


class NonNegativeL(SatrankError):
    pass


class ZeroLinking(SatrankError):
    pass


class MissingTau(SatrankError, KeyError):
    """A required Chern-Simons lower bound is absent from the oracle table."""

    def __init__(self, key):
        super().__init__(key)
        self.key = key

    def __str__(self):
        return f"missing tau bound for {self.key!r}"
