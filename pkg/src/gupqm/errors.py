"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NoBoundStateError(ValueError):
    """Requested a bound state for a coupling that supports none (v >= 0)."""


class NumericsError(RuntimeError):
    """A numerical procedure failed to deliver a trustworthy result."""


class ConvergenceError(NumericsError):
    """Quadrature or series did not converge to the requested tolerance."""


class DivergenceError(NumericsError):
    """An integral was detected to diverge; the message names the endpoint."""


class RootFindError(NumericsError):
    """Newton iteration diverged or stalled; carries the iteration trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class NearPoleError(NumericsError):
    """Green's-function evaluation requested inside the guard band of a pole."""


class OrderValidityWarning(UserWarning):
    """First-order correction exceeds 20% of the leading term; closed forms
    are only trustworthy to first order in the GUP parameter."""


class ToleranceWarning(UserWarning):
    """A built-in cross-check exceeded its nominal tolerance (non-fatal)."""
