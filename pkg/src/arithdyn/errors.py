"""Exception hierarchy shared by every subpackage."""


class ArithDynError(Exception):
    """Base class for all library errors."""


class VariableMismatchError(ArithDynError, ValueError):
    """Two polynomials (or a polynomial and a map) disagree on their variables."""


class ArityError(ArithDynError, ValueError):
    """Wrong number of substitutions, coordinates or components."""


class BadPrimeError(ArithDynError, ValueError):
    """A prime divides a denominator, so reduction modulo it is undefined."""


class InvalidParameterError(ArithDynError, ValueError):
    """A zoo family or an operation received parameters outside its domain."""


class ResourceLimitError(ArithDynError):
    """A configured cap (terms, digits, enumeration size) would be exceeded."""

    def __init__(self, message, cap_name=None, estimate=None):
        super().__init__(message)
        self.cap_name = cap_name
        self.estimate = estimate


class ParseError(ArithDynError, ValueError):
    """Malformed polynomial, point or map document text."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where)
        self.line = line
        self.column = column
