class GsopError(Exception):
    """Base class for all package errors."""


class ParameterError(GsopError, ValueError):
    """Invalid or mismatched parameters (alpha, M, j, ...)."""


class DomainError(GsopError, ValueError):
    """A precondition on an argument was violated."""


class NumericalError(GsopError, ArithmeticError):
    """A linear system or iteration that should be well posed was not."""


class ConsistencyError(GsopError, RuntimeError):
    """A self-check failed, e.g. a zero count came out wrong."""
