"""Exception types shared across the package."""


class FrobkhError(Exception):
    """Base class for all errors raised by frobkh."""


class UsageError(FrobkhError, ValueError):
    """Invalid arguments, mismatched rings, or malformed specifications."""


class ParseError(UsageError):
    """Malformed diagram, ring or polynomial text.

    ``position`` is the character offset of the problem when known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnsupportedDomainError(FrobkhError):
    """The requested computation needs a Euclidean coefficient ring."""


class RepresentationError(FrobkhError):
    """A Frobenius system cannot be written in a rank-two basis."""


class NotInvertibleError(UsageError):
    """An element expected to be a unit is not invertible."""
