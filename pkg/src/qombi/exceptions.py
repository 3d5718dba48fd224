"""Exception hierarchy shared by every qombi module."""


class QombiError(Exception):
    """Base class for all qombi errors."""


class ValidationError(QombiError, ValueError):
    """Malformed input: bad indices, non-finite coefficients, bad bitstrings."""


class DimensionError(ValidationError):
    """Sizes of two inputs disagree (e.g. spin config vs. model)."""


class DegenerateInputError(ValidationError):
    """Input is well-formed but degenerate for the requested operation."""


class CapacityError(QombiError):
    """Problem exceeds the size supported by a dense/exhaustive code path."""


class IncompatibleReportError(QombiError):
    """Reports built for different problems were compared."""


class SolverError(QombiError):
    """A solver produced non-finite or otherwise unusable output."""
