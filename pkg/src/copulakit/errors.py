"""Exception types raised across copulakit."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NoDensityError(DomainError):
    """The copula is singular and has no density (the Frechet bounds)."""


class ConvergenceError(RuntimeError):
    """A numerical routine exhausted its budget without meeting tolerance."""


class EstimationRangeError(ValueError):
    """The sample statistic cannot be inverted for the requested family."""

    def __init__(self, message, tau_hat=None):
        super().__init__(message)
        self.tau_hat = tau_hat
