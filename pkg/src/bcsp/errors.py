"""Exception hierarchy shared by all bcsp modules."""


class BcspError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidArgumentError(BcspError):
    """An argument violates an operation's documented precondition."""


class UnsupportedError(BcspError):
    """The operation would leave the supported algebra (e.g. arity 0)."""


class NotInClassError(BcspError):
    """The relation does not belong to the requested syntactic class."""


class NoWitnessError(BcspError):
    """No equality-simulation witness exists for the given language."""


class ResourceLimitError(BcspError):
    """The exact engine refused to run past its configured budget."""


class OutOfScopeError(BcspError):
    """The requested parameters fall outside the classified regime."""


class ParseError(BcspError):
    """A text artifact failed to parse; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
