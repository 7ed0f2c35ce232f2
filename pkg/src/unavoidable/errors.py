"""Exception hierarchy shared by every module."""


class UnavoidableError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(UnavoidableError, ValueError):
    """Malformed graph or certificate text."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class ValidationError(UnavoidableError, ValueError):
    """Well-formed input describing something that is not a simple graph."""


class DomainError(UnavoidableError, ValueError):
    """An argument lies outside the documented range."""


class PreconditionError(UnavoidableError, ValueError):
    """An operation was called on an input violating its precondition."""


class NotEulerianError(PreconditionError):
    def __init__(self, vertex, degree):
        self.vertex = vertex
        self.degree = degree
        super().__init__(f"vertex {vertex} has odd degree {degree}")


class SizeLimitError(UnavoidableError, ValueError):
    """Input exceeds a configured search limit."""


class NotGuaranteedError(UnavoidableError):
    """A search below its guaranteed threshold found none of its outcomes.

    ``partial`` carries whatever the search produced (for super-cleaning, the
    chain of super-clean pinched ladders).
    """

    def __init__(self, message, partial=None, guaranteed=False):
        self.partial = partial
        self.guaranteed = guaranteed
        super().__init__(message)


class AlgorithmError(UnavoidableError, AssertionError):
    """An internal invariant of an algorithm was violated."""
