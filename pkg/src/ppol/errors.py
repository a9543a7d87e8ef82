"""Exception types shared across the package."""


class PpolError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(PpolError):
    """Division by the zero element of the function field."""


class TruncationOverflow(PpolError):
    """A computation needs a monomial outside the configured degree bound.

    This is a hard error by design: searches are exact and complete within a
    declared truncation, and silently dropping terms would invalidate that.
    """

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class ParseError(PpolError):
    """Input text does not match the expression/group grammar."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class ShapeError(PpolError):
    """Arity/shape mismatch between composed objects."""


class NotInvertible(PpolError):
    """A substitution could not be inverted as a change of variables."""
