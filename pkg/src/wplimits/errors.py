"""Exception hierarchy shared by the library and the command line."""


class WPLimitsError(Exception):
    """Base class for all package errors."""


class PreconditionError(WPLimitsError, ValueError):
    """An operation was called outside the hypotheses it is defined under."""


class NotSemiStable(PreconditionError):
    pass


class GenericityError(PreconditionError):
    """A genericity condition failed; ``witness`` pinpoints the failure."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedDivisor(PreconditionError):
    pass


class SchemaError(WPLimitsError):
    pass


class InvariantBreach(WPLimitsError, AssertionError):
    """An internal consistency identity failed; always a bug or corrupt input."""
