"""Exception types shared across the package."""


class PeriodGramError(Exception):
    """Base class for all package errors."""


class ValidationError(PeriodGramError, ValueError):
    """Input data violates a documented invariant."""


class DomainError(PeriodGramError, ValueError):
    """A function was evaluated outside its domain."""


class GeometryError(PeriodGramError):
    """A hyperbolic polygon relation has no real solution for the given data.

    ``relation`` names the violated relation so callers can report it.
    """

    def __init__(self, relation, message):
        super().__init__(f"{relation}: {message}")
        self.relation = relation
        self.detail = message


class ConvergenceError(PeriodGramError):
    """An iterative method failed to reach its tolerance."""
