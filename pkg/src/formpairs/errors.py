"""Exception hierarchy shared by every module of the package."""


class FormPairsError(Exception):
    """Base class for all errors raised by formpairs."""


class ContextMismatch(FormPairsError, ValueError):
    pass


class DivisionByZero(FormPairsError, ZeroDivisionError):
    pass


class NotAUnit(FormPairsError, ValueError):
    pass


class InvalidParameter(FormPairsError, ValueError):
    pass


class SingularMatrix(FormPairsError, ValueError):
    pass


class InvalidLeftMatrix(FormPairsError, ValueError):
    pass


class DegreeMismatch(FormPairsError, ValueError):
    pass


class UnsupportedDegree(FormPairsError, ValueError):
    pass


class UnsupportedPrime(FormPairsError, ValueError):
    pass


class HypothesisViolation(FormPairsError, ValueError):
    pass


class NonRealizable(FormPairsError):
    """The pair violates the transgression restrictions."""


class NotFree(FormPairsError):
    """The rotation data does not define a free action."""


class ResourceLimit(FormPairsError):
    """A desk-scale bound (prime size, pair count, degree) was exceeded."""
