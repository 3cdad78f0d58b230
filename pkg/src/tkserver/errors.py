"""Exception types shared across the package."""


class KServerError(Exception):
    """Base class for all errors raised by tkserver."""


class InvalidParameter(KServerError, ValueError):
    """A constructor or operation received parameters outside its domain."""


class TooLarge(KServerError):
    """A space or state space exceeds the configured size cap."""


class Unsupported(KServerError):
    """The operation is not defined for this kind of metric space."""


class InvalidSchedule(KServerError):
    """A schedule fails to cover one of the requests."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"configuration {index} does not cover request {index}")


class InternalError(KServerError):
    """A construction invariant was violated; indicates a bug, not bad input."""
