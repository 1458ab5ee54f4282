"""Exception hierarchy shared by all modules."""


class ParindError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeModulus(ParindError, ValueError):
    pass


class DegreeOutOfRange(ParindError, ValueError):
    pass


class FieldMismatch(ParindError, ValueError):
    pass


class DivisionByZero(ParindError, ZeroDivisionError):
    pass


class UnsupportedType(ParindError, ValueError):
    pass


class ImproperSubset(ParindError, ValueError):
    pass


class BadPrime(ParindError, ValueError):
    pass


class ZeroVector(ParindError, ValueError):
    pass


class NotCyclic(ParindError, ValueError):
    pass


class NotInvariant(ParindError, ValueError):
    pass


class ProperSubspaceRequired(ParindError, ValueError):
    pass


class IncompatibleWeight(ParindError, ValueError):
    pass


class NotScalarMultiple(ParindError, RuntimeError):
    """E.F applied to the maximal vector left the line it spans (engine bug)."""


class NoNonvanishingPoint(ParindError, ValueError):
    pass


class InconsistentConstant(ParindError, ValueError):
    """Ratios R_direct / prod(factors) disagree across a sweep."""


class ConfigError(ParindError, ValueError):
    """Bad run configuration; carries an optional column for diagnostics."""

    def __init__(self, message, text=None, column=None):
        self.text = text
        self.column = column
        if text is not None and column is not None:
            message = f"{message}\n  {text}\n  {' ' * column}^ (column {column + 1})"
        super().__init__(message)
