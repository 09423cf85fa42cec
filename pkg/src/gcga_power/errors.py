"""Exception types raised across the package."""


class GCGAError(Exception):
    """Base class for all errors raised by gcga_power."""


class DimensionMismatchError(GCGAError, ValueError):
    pass


class GradeError(GCGAError, ValueError):
    pass


class MissingPhasorTagError(GCGAError, ValueError):
    pass


class SpectrumError(GCGAError, ValueError):
    """Invalid harmonic content (duplicate order, DC term, bad frequency)."""


class FundamentalMismatchError(GCGAError, ValueError):
    pass


class ConsistencyError(GCGAError, ArithmeticError):
    """Two routes to the same quantity disagree; indicates a bug, not bad input."""


class PowerFactorUndefined(GCGAError, ArithmeticError):
    pass


class SingularAdmittanceError(GCGAError, ArithmeticError):
    """A harmonic lands on the admittance pole of an LC branch."""


class InfeasibleDesignError(GCGAError, ValueError):
    """The requested compensator cannot be realised with passive elements."""


class CircuitFileError(GCGAError, ValueError):
    """Malformed or invalid circuit description."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
