"""Exception hierarchy shared across the package.

Everything derives from HypereigError so callers can catch the whole family,
while the service layer maps concrete classes onto error codes and the CLI
onto exit codes.
"""

from __future__ import annotations

__all__ = [
    "HypereigError",
    "DomainError",
    "UsageError",
    "ConvergenceError",
    "IntegrationError",
    "RecoveryError",
    "ZeroObservationError",
    "RadiusTooLargeError",
    "ValueOutOfRangeError",
    "InconsistentObservationError",
]


class HypereigError(Exception):
    """Base class for all package errors."""


class DomainError(HypereigError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UsageError(HypereigError, ValueError):
    """The operation was called in a way its contract does not cover."""


class ConvergenceError(HypereigError, RuntimeError):
    """An iterative scheme failed to reach the requested tolerance.

    ``achieved`` carries the best error estimate obtained before giving up,
    ``requested`` the target it was measured against.
    """

    def __init__(self, message: str, achieved: float | None = None,
                 requested: float | None = None):
        super().__init__(message)
        self.achieved = achieved
        self.requested = requested


class IntegrationError(HypereigError, RuntimeError):
    """ODE integration broke down; ``last_r`` is the last good abscissa."""

    def __init__(self, message: str, last_r: float | None = None):
        super().__init__(message)
        self.last_r = last_r


class RecoveryError(HypereigError):
    """Base class for eigenvalue-recovery failures."""


class ZeroObservationError(RecoveryError):
    """A zero observation carries no spectral information."""


class RadiusTooLargeError(RecoveryError):
    """The observation radius exceeds the admissible window pi*rho/p.

    ``required_r0`` is the largest radius at which a second observation
    would make the recovery well-posed.
    """

    def __init__(self, message: str, required_r0: float):
        super().__init__(message)
        self.required_r0 = required_r0


class ValueOutOfRangeError(RecoveryError):
    """The observed value is outside the range any eigenfunction attains."""


class InconsistentObservationError(RecoveryError):
    """Two observations cannot come from one radial eigenfunction."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
