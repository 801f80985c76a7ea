"""Exception hierarchy shared across the package."""


class LorfanError(Exception):
    """Base class for all package errors."""


class DimensionError(LorfanError):
    """Operands have incompatible dimensions."""


class InputError(LorfanError):
    """Malformed external input (files, JSON, rational strings)."""


class PreconditionError(LorfanError):
    """A documented precondition of an operation was violated."""


class BalancingError(PreconditionError):
    """A weight that was required to be balanced is not."""


class ConvexityError(PreconditionError):
    """A divisor that was required to be convex is not.

    Carries the failing certificate so callers can inspect which cone
    rejected the divisor.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InternalError(LorfanError):
    """An internal invariant was breached; indicates a bug."""
