"""Exception hierarchy shared by every layer of the package."""


class RegseqError(Exception):
    """Base class for all errors raised by regseq."""


class RingMismatchError(RegseqError, ValueError):
    """Operands live over different rings or ambient free modules."""


class ParseError(RegseqError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class GradingError(RegseqError, ValueError):
    """An operation needs a graded module or homogeneous input."""


class PreconditionError(RegseqError, ValueError):
    """Arguments violate the documented precondition of an operation."""


class ResourceError(RegseqError):
    """A computation was aborted because it exceeded a configured limit."""


class DegreeCapExceeded(ResourceError):
    def __init__(self, degree, cap):
        self.degree = degree
        self.cap = cap
        super().__init__(f"degree {degree} exceeds the degree cap {cap}")


class InconsistencyError(RegseqError):
    """Two criteria that must agree returned different answers."""
