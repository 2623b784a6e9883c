"""Exception hierarchy shared across the package."""


class CakError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CakError):
    """Malformed polynomial text.  Carries the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RingMismatchError(CakError):
    """Operands belong to different ring presentations."""


class DegreeOverflowError(CakError):
    """An exponent or weighted degree exceeded the machine-checked bounds."""


class ResourceLimitError(CakError):
    """A computation exceeded its pair/step budget.  Fail-stop, never wrong."""


class NotArtinianError(CakError):
    """A length/socle computation was asked for a non-Artinian quotient."""


class PreconditionError(CakError):
    """An operation's stated precondition does not hold for the input."""
