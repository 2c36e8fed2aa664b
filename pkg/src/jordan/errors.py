"""Exception hierarchy shared by every module in the package."""


class JordanError(Exception):
    """Base class for all errors raised by :mod:`jordan`."""


class DegenerateInput(JordanError, ValueError):
    pass


class SingularLocalInverse(JordanError, ZeroDivisionError):
    pass


class ExactModeUnavailable(JordanError):
    """Raised when a factor cannot be split over the exact scalar tower.

    The offending factor is kept on the ``factor`` attribute so callers can
    name it in reports.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ClusterAmbiguity(JordanError):
    pass


class NotNilpotent(JordanError, ValueError):
    pass


class NotUnipotent(JordanError, ValueError):
    pass


class ShapeError(JordanError, ValueError):
    pass


class InconsistentInput(JordanError, ValueError):
    pass


class NotInvertible(JordanError, ZeroDivisionError):
    pass


class NotSemisimple(JordanError, ValueError):
    pass


class SizeLimit(JordanError, ValueError):
    pass


class NotMember(JordanError, ValueError):
    pass


class InternalError(JordanError, RuntimeError):
    """An invariant that the construction guarantees was violated."""
