"""Exception types shared across the package."""


class IsingvError(Exception):
    """Base class for all isingv errors."""


class DomainError(IsingvError, ValueError):
    """An argument lies outside the validity region of the requested routine."""


class PoleError(DomainError):
    """Evaluation requested exactly at (or too close to) a pole."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class BranchError(DomainError):
    """Square-root branch is ambiguous for the supplied argument."""


class StokesRayError(DomainError):
    """Laplace ray coincides (within margin) with a Stokes line."""


class ConvergenceError(IsingvError, RuntimeError):
    """An iterative scheme failed to reach the requested tolerance.

    `best` carries the last estimate, `err` its internal error gauge.
    """

    def __init__(self, message, best=None, err=None):
        super().__init__(message)
        self.best = best
        self.err = err


class DecayStallError(ConvergenceError):
    """Contour-tail magnitude stopped decreasing; the integrand decay rate is
    too slow for the supplied parameters (natural-boundary symptom)."""


class RouteDisagreementError(IsingvError, ArithmeticError):
    """Two supposedly equivalent evaluation routes disagree beyond tolerance."""


class FitError(IsingvError, RuntimeError):
    """Least-squares law fit is too poor to report a coefficient."""
