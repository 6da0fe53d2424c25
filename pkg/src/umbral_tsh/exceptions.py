"""Exception types raised by the umbral engine."""


class UmbralError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(UmbralError, ValueError):
    """An argument lies outside the domain of an operation."""


class OrderExceededError(UmbralError, ValueError):
    """A requested degree exceeds the truncation order of an umbra."""


class SingularInverseError(UmbralError, ZeroDivisionError):
    """Compositional inverse requested for an umbra with zero first moment."""


class IdentityError(UmbralError, AssertionError):
    """Two independent computation paths disagree.

    ``residual`` holds the difference of the two results.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpecParseError(UmbralError, ValueError):
    """Malformed umbra spec or serialized value.

    ``position`` locates the offending element (a JSON path or character
    offset) when it is known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position
