"""Exception hierarchy.

Input-type problems derive from :class:`InputError`; failures of a numerical
procedure derive from :class:`NumericalError`. The CLI maps the two families
onto distinct exit codes.
"""


class FirstKindError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FirstKindError, ValueError):
    """The caller supplied something outside an operation's domain."""


class NumericalError(FirstKindError, ArithmeticError):
    """A numerical procedure failed to reach its accuracy target."""


class OutOfDomainError(InputError):
    pass


class InvalidScaleError(InputError):
    pass


class PreconditionError(InputError):
    pass


class RangeError(InputError):
    pass


class BracketError(InputError):
    pass


class DomainError(InputError):
    """A point that must lie inside the domain does not."""


class IllConditionedRecenteringError(NumericalError):
    pass


class ResolutionError(NumericalError):
    """Boundary sampling too coarse to resolve the curve."""


class SingularGradientError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


class IndeterminateCountError(NumericalError):
    """Degenerate critical points prevent a reliable count of maxima."""


class AccuracyError(NumericalError):
    """Successive refinements disagree by more than the tolerance.

    Both estimates are kept so the caller can decide what to do with them.
    """

    def __init__(self, message, coarse=None, fine=None):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine


class CuspError(NumericalError):
    """The boundary normal is undefined because f' vanishes on the circle."""
