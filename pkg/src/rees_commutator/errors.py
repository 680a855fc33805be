"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class; carries an optional witness for reporting."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MalformedTable(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class OutOfRange(AlgebraError):
    pass


class ShapeMismatch(AlgebraError):
    pass


class NotIdempotent(AlgebraError):
    pass


class NotCompletelySimple(AlgebraError):
    pass


class NoUniqueInverse(AlgebraError):
    pass


class TooLarge(AlgebraError):
    pass


class NotAGroup(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class NotNormalized(AlgebraError):
    pass


class NotACongruence(AlgebraError):
    pass


class NotLinked(AlgebraError):
    pass


class NotRegular(AlgebraError):
    pass


class MethodUnavailable(AlgebraError):
    pass


class Mismatch(AlgebraError):
    """Fast and oracle commutators disagree; ``witness`` holds both results."""
