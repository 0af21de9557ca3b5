"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid parameter vectors (lengths, signs, serialization)."""


class DeltaNeutralityError(ParameterError):
    """Weight vectors violate the zero-sum balance condition."""


class PoleError(ArithmeticError):
    """Evaluation requested at (or too close to) a gamma pole."""


class DomainError(ValueError):
    """Input outside the domain where the requested method is defined."""


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to reach the requested tolerance."""
