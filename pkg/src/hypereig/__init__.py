"""Radial eigenfunctions of the Laplacian on the hyperbolic ball.

The package evaluates the one-parameter family of radial eigenfunctions
through a boundary-kernel integral, cross-checks it against a direct ODE
integration, and inverts the map: given the average of an eigenfunction
over one geodesic sphere (or two, when one cannot decide), it recovers
the eigenvalue.

Core entry points:

    eigenfn.phi             evaluate by eigenvalue, any branch
    inversion.recover       eigenvalue from one or two sphere averages
    oracle.solve_ode        independent ODE evaluation of the same family
    radialize.sphere_average  Monte Carlo sphere average of the kernel
    checks.run_suites       executable self-verification
    service.create_app      HTTP app; the CLI is a thin client of it
"""

from .errors import (
    ConvergenceError,
    DomainError,
    HypereigError,
    InconsistentObservationError,
    IntegrationError,
    RadiusTooLargeError,
    RecoveryError,
    UsageError,
    ValueOutOfRangeError,
    ZeroObservationError,
)
from .geometry import (
    ChordGeometry,
    HyperbolicSpace,
    chord,
    eta_from_r,
    omega_theta,
    r_from_eta,
    sphere_surface,
)
from .quadrature import QuadratureConfig, integrate
from .eigenfn import (
    BranchKind,
    SpectralParam,
    closed_form_k2,
    lambda_from_alpha,
    phi,
    phi_oscillatory,
    phi_real_alpha,
    separator_V,
    spectral_from_lambda,
    taylor_moment,
)
from .oracle import (
    LimitBehavior,
    SampleTable,
    count_zeros,
    find_zeros,
    limit_at_infinity,
    liouville_Q,
    series_start,
    solve_ode,
)
from .inversion import (
    Observation,
    ObservationClass,
    RecoveryResult,
    b_upper_bound,
    classify,
    recover,
    recover_bounded,
    recover_large,
    recover_two_radii,
)
from .radialize import BallPoint, kernel_eigenfunction, sphere_average
from .checks import PropertyCheck, SUITE_NAMES, run_suites

__version__ = "0.1.0"

__all__ = [
    "__version__",
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
    "HyperbolicSpace",
    "ChordGeometry",
    "eta_from_r",
    "r_from_eta",
    "chord",
    "omega_theta",
    "sphere_surface",
    "QuadratureConfig",
    "integrate",
    "BranchKind",
    "SpectralParam",
    "spectral_from_lambda",
    "lambda_from_alpha",
    "phi",
    "phi_real_alpha",
    "phi_oscillatory",
    "separator_V",
    "closed_form_k2",
    "taylor_moment",
    "LimitBehavior",
    "SampleTable",
    "series_start",
    "solve_ode",
    "find_zeros",
    "count_zeros",
    "liouville_Q",
    "limit_at_infinity",
    "Observation",
    "ObservationClass",
    "RecoveryResult",
    "classify",
    "recover",
    "recover_large",
    "recover_bounded",
    "recover_two_radii",
    "b_upper_bound",
    "BallPoint",
    "kernel_eigenfunction",
    "sphere_average",
    "PropertyCheck",
    "SUITE_NAMES",
    "run_suites",
]
