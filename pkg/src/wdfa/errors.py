"""Exception types raised across the package."""


class WdfaError(Exception):
    """Base class for every error raised by this package."""


class EmptyFamily(WdfaError, ValueError):
    """The requested automaton family has no members."""


class BadRange(WdfaError, ValueError):
    pass


class Exhausted(WdfaError, IndexError):
    pass


class OutOfRange(WdfaError, IndexError):
    pass


class BadInput(WdfaError, ValueError):
    pass


class LengthMismatch(WdfaError, ValueError):
    pass


class NotWheeler(WdfaError, ValueError):
    pass


class BadPair(WdfaError, ValueError):
    pass


class TooLarge(WdfaError, ValueError):
    pass


class UnknownOutcome(WdfaError, RuntimeError):
    """A sampler produced an automaton outside the enumerated family."""


class PreconditionViolated(WdfaError, ValueError):
    pass


class AttemptLimitExceeded(WdfaError, RuntimeError):
    """The streaming sampler hit its rejection cap without accepting."""


class ParseError(WdfaError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
