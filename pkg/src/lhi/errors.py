"""Exception hierarchy shared by all modules.

Every public operation either returns a finite value or raises one of
these; nothing returns NaN or infinity as a silent failure signal.
"""


class LHIError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LHIError, ValueError):
    """Argument outside the domain where the function is defined or supported."""


class ParameterError(LHIError, ValueError):
    """Parameter combination hits an unresolvable pole."""


class PoleError(ParameterError):
    """Gamma function evaluated at a non-positive integer."""


class UnsupportedOrder(DomainError):
    """Order or degree outside the supported parameter box."""


class NonConvergence(LHIError, ArithmeticError):
    """A series or transformation failed to converge."""


class ConventionDegenerate(LHIError, ValueError):
    """Normalization factor of the requested Q convention is 0/0 or infinite."""


class ConvergenceError(LHIError, ValueError):
    """The integral diverges at t = 0 for these (nu, mu)."""


class ExistenceError(LHIError, ValueError):
    """The Laplace transform does not exist at this point s."""


class AccuracyError(LHIError, ArithmeticError):
    """Quadrature could not meet its error target within the evaluation budget."""


class DegenerateParameters(LHIError, ValueError):
    """Erratum factors degenerate (0/0 or infinite) at these parameters."""
