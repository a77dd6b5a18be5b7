"""Exception hierarchy shared by every module of the package."""


class HypolyError(Exception):
    """Base class for all errors raised by :mod:`hypoly`."""


class ParameterOutOfRange(HypolyError, ValueError):
    """The (alpha, beta) pair violates the constraint of its sigma class."""


class DomainError(HypolyError, ValueError):
    """A function was evaluated outside the open interval where it is defined."""


class CutoffExceeded(HypolyError, ValueError):
    """A polynomial index l was requested with l >= Lambda."""


class DegenerateRecurrence(HypolyError, ArithmeticError):
    """The downward coefficient recurrence hit a vanishing pivot."""


class OracleUnavailable(HypolyError):
    """An oracle route does not apply to the requested class."""


class QuadratureDivergence(HypolyError, ArithmeticError):
    """Numerical integration failed to converge."""


class RepMismatch(HypolyError, ValueError):
    """An operator was applied to a representation with the wrong kappa power."""


class UnsupportedClass(HypolyError, ValueError):
    """The requested construction is not defined for this sigma class."""


class ToleranceExceeded(HypolyError, AssertionError):
    """An identity check produced a residual above its tolerance."""


class PoleError(HypolyError, ZeroDivisionError):
    """A series parameter sits on a pole (non-positive integer)."""


class TruncationInsufficient(HypolyError, ValueError):
    """A truncated expansion does not reach the requested tail bound."""


class NotDivisible(HypolyError, ArithmeticError):
    """Polynomial division left a nonzero remainder where none was expected."""
