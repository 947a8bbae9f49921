"""Exception types shared across the package."""


class TrigPolyError(Exception):
    """Base class for all trigpoly errors."""


class InvalidSizeError(TrigPolyError):
    """A size/length argument is empty, zero, or otherwise unusable."""


class ParityError(TrigPolyError):
    """An operation defined only for one grid parity got the other one."""


class IntervalMismatchError(TrigPolyError):
    """Binary operation on functions living on different intervals."""


class ResolutionError(TrigPolyError):
    """A function could not be resolved to machine precision.

    Carries the last grid size tried in ``grid_size``.
    """

    def __init__(self, message, grid_size=None):
        super().__init__(message)
        self.grid_size = grid_size


class PeriodicityError(TrigPolyError):
    """An operation would break smooth periodicity (e.g. abs of a sign-changing function)."""


class RealnessError(TrigPolyError):
    """A real-valued function was required but a complex one was supplied."""


class ZeroFunctionError(TrigPolyError):
    """The zero function was passed where it has no meaningful answer (e.g. roots)."""


class DuplicateNodeError(TrigPolyError):
    """Interpolation nodes coincide modulo the period."""


class SingularOperatorError(TrigPolyError):
    """The collocation matrix of a differential operator is singular."""


class ConvergenceError(TrigPolyError):
    """An iteration (Remez exchange, Newton) failed to converge.

    ``last_iterate`` holds the best iterate available when applicable.
    """

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class ParseError(TrigPolyError):
    """Expression syntax error.  ``position`` is the byte offset, ``expected``
    a short description of what would have been legal there."""

    def __init__(self, message, position, expected=None):
        super().__init__(message)
        self.position = position
        self.expected = expected
