"""Exception types shared across the package."""


class CondspecError(Exception):
    """Base class for all condspec errors."""


class DimensionMismatch(CondspecError):
    """Operands have incompatible shapes."""


class SingularMatrix(CondspecError):
    """A pivot fell below the singularity tolerance during elimination."""


class SingularShift(CondspecError):
    """The shift z is numerically too close to the spectrum to solve."""


class NoConvergence(CondspecError):
    """An iterative kernel hit its iteration cap."""


class ZeroRhs(CondspecError):
    """The right-hand side y is zero, so relative errors are undefined."""


class NotStable(CondspecError):
    """The matrix has an eigenvalue in the open right half-plane."""


class InvalidEpsilon(CondspecError, ValueError):
    """The epsilon parameter is outside its admissible range."""


class UnknownFixture(CondspecError, KeyError):
    """No built-in example data under the requested name."""


class ParseError(CondspecError, ValueError):
    """Malformed matrix/vector file.

    Carries ``line`` and ``column`` (1-based) when they are known.
    """

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
