"""Exception types shared across the package."""


class ConpopError(Exception):
    """Base class for all package errors."""


class MalformedInputError(ConpopError, ValueError):
    """A permutation, pattern or pattern set could not be parsed or is invalid."""


class InvalidQueryError(ConpopError, ValueError):
    """A query is well formed but meaningless, e.g. the popularity of an avoided pattern."""


class DomainError(ConpopError, ValueError):
    """An argument lies outside the range where a formula is defined."""


class VerificationError(ConpopError, AssertionError):
    """An identity that should hold exactly was found to fail."""


class InsufficientDataError(ConpopError, ValueError):
    """Too few defined values to estimate a limit."""


class NumericalError(ConpopError, ArithmeticError):
    """A high-precision numeric evaluation did not reach its tolerance."""
