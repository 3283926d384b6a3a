"""Exception taxonomy.

Two families matter to callers: ValidationError (bad arguments or
configuration, CLI exit code 2) and NumericalError (a computation refused
or failed a resolution/feasibility guard, CLI exit code 3).
"""


class WeyllabError(Exception):
    pass


class ValidationError(WeyllabError):
    pass


class NumericalError(WeyllabError):
    pass


class ZeroArgument(ValidationError):
    """A covector argument was exactly zero where a direction is required."""


class InvalidSymbol(ValidationError):
    """Symbol failed construction-time validation (positivity, degrees)."""


class UnsupportedOrder(ValidationError):
    """Derivative order outside the support of the symbol representation."""


class UnsupportedDimension(ValidationError):
    """Ambient dimension outside the implemented range."""


class DomainError(ValidationError):
    """Evaluation point outside the model's open domain."""


class OverflowRisk(NumericalError):
    """Predicted enumeration size exceeds the refusal threshold."""


class UnderResolved(NumericalError):
    """Quadrature resolution violates the sampling rule for the request."""


class NonIntegrable(NumericalError):
    """Requested weight makes the limit integrand non-integrable at 0."""


class DegenerateFit(NumericalError):
    """Regression request has too few samples or too little spread."""


class PairTooClose(NumericalError):
    """An off-diagonal pair violates the kappa*L^(-1/m) separation rule."""
