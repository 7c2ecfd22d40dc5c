"""Exception hierarchy shared by every adjlab module."""


class AdjlabError(Exception):
    """Base class for all adjlab errors."""


class RingMismatch(AdjlabError, ValueError):
    pass


class ParseError(AdjlabError, ValueError):
    """Raised on malformed polynomial strings or input documents.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class BudgetExceeded(AdjlabError, RuntimeError):
    """A degree cap, pair cap, node cap or time budget was hit.

    This is a hard error: callers never receive a partial answer.
    """


class PrecisionError(AdjlabError, ArithmeticError):
    """Truncated power series do not carry enough terms to decide."""


class Refused(AdjlabError, ValueError):
    """An operation declined an input outside its stated hypotheses."""


class VerificationError(AdjlabError, RuntimeError):
    """A built-in self-check failed; the result must not be used."""


class GenericityError(AdjlabError, RuntimeError):
    """Seeded 'general' choices failed a posteriori validation."""
