"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(RuntimeError):
    """An iterative solver stopped before reaching the requested accuracy.

    Attributes
    ----------
    gap : float
        Last achieved accuracy measure (e.g. capacity bracket width in bits).
    iterations : int
        Number of iterations performed.
    """

    def __init__(self, message, gap, iterations):
        super().__init__(message)
        self.gap = gap
        self.iterations = iterations


class QuadratureError(RuntimeError):
    """Numerical integration did not reach the requested accuracy."""

    def __init__(self, message, error_estimate):
        super().__init__(message)
        self.error_estimate = error_estimate
