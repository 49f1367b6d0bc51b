"""Ball-model geometry and the chord-ratio kernel.

Hyperbolic (k+1)-space of constant sectional curvature -1/rho^2 is modeled
on the open Euclidean ball of radius rho. A point at geodesic distance r
from the center sits at Euclidean radius

    eta = rho * tanh(r / (2 rho)),

and the geodesic sphere of radius r is the Euclidean sphere |x| = eta.

For a point m inside the ball and a boundary point u, the chord through m
and u is split by m into two segments of lengths l (toward u) and q (away
from u). The kernel

    omega(m, u) = (rho^2 - eta^2) / |m - u|^2 = l / q

is the hyperbolic analogue of the Poisson kernel: every real power omega^alpha
is an eigenfunction of the Laplace-Beltrami operator. Two parametrizations of
the boundary point are provided. The polar angle theta between m and u as seen
from the center gives

    |m - u|^2 = rho^2 + eta^2 - 2 rho eta cos(theta),

a smooth non-oscillatory chart used for quadrature. The chord angle psi (at m,
against the diameter through m) gives the segment lengths in closed form,

    l = h + eta cos(psi),  q = h - eta cos(psi),  h = sqrt(rho^2 - eta^2 sin^2(psi)),

which is the chart in which d(ln omega)/dpsi has a short closed form. Both
describe the same kernel and the tests hold them against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "HyperbolicSpace",
    "ChordGeometry",
    "eta_from_r",
    "r_from_eta",
    "chord",
    "omega_theta",
    "log_omega_theta",
    "sphere_surface",
]


@dataclass(frozen=True)
class HyperbolicSpace:
    """Model radius rho and boundary-sphere dimension k (ambient dim k+1)."""

    rho: float
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
            raise DomainError(f"sphere dimension k must be an integer >= 1, got {self.k!r}")
        rho = float(self.rho)
        if not math.isfinite(rho) or rho <= 0.0:
            raise DomainError(f"model radius rho must be finite and > 0, got {self.rho!r}")
        object.__setattr__(self, "rho", rho)

    @property
    def kappa(self) -> float:
        """Sectional curvature, -1/rho^2."""
        return -1.0 / (self.rho * self.rho)

    @property
    def lambda_critical(self) -> float:
        """Branch point k^2/(4 rho^2) separating real powers from oscillatory ones."""
        return self.k * self.k / (4.0 * self.rho * self.rho)


@dataclass(frozen=True)
class ChordGeometry:
    """Segment lengths of a chord through an interior point.

    l and q are the two pieces the chord is cut into, sum = l + q is the full
    chord length and omega = l/q the kernel value. Constructed via chord();
    the defining identities (l*q equals the power of the point, (l+q)^2/4
    equals rho^2 - eta^2 sin^2 psi) are checked in the test suite.
    """

    l: float
    q: float
    sum: float
    omega: float


def eta_from_r(space: HyperbolicSpace, r: float) -> float:
    """Euclidean radius of the geodesic sphere of radius r."""
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"geodesic radius must be finite and >= 0, got {r!r}")
    return space.rho * math.tanh(r / (2.0 * space.rho))


def r_from_eta(space: HyperbolicSpace, eta: float) -> float:
    """Geodesic radius of the Euclidean sphere |x| = eta; inverse of eta_from_r."""
    eta = float(eta)
    if not (0.0 <= eta < space.rho):
        raise DomainError(f"euclidean radius must lie in [0, rho), got {eta!r}")
    return space.rho * math.log((space.rho + eta) / (space.rho - eta))


def chord(space: HyperbolicSpace, eta: float, psi: float) -> ChordGeometry:
    """Chord segments at angle psi in [0, pi/2] through the point at radius eta.

    q is formed as (rho^2 - eta^2)/l, the power-of-the-point identity, which
    avoids the subtraction h - eta*cos(psi) that loses digits when the point
    approaches the boundary.
    """
    eta = float(eta)
    psi = float(psi)
    if not (0.0 <= eta < space.rho):
        raise DomainError(f"euclidean radius must lie in [0, rho), got {eta!r}")
    if not (0.0 <= psi <= math.pi / 2.0 + 1e-15):
        raise DomainError(f"chord angle must lie in [0, pi/2], got {psi!r}")
    rho = space.rho
    s = math.sin(psi)
    h = math.sqrt(rho * rho - eta * eta * s * s)
    l = h + eta * math.cos(psi)
    q = (rho * rho - eta * eta) / l
    return ChordGeometry(l=l, q=q, sum=l + q, omega=l / q)


def omega_theta(space: HyperbolicSpace, eta: float, theta: float) -> float:
    """Kernel value at polar angle theta in [0, pi] between the point and u.

    The squared chord distance is written (rho-eta)^2 + 4 rho eta sin^2(theta/2),
    which is exact at theta = 0 where the naive cosine form cancels.
    """
    eta = float(eta)
    theta = float(theta)
    if not (0.0 <= eta < space.rho):
        raise DomainError(f"euclidean radius must lie in [0, rho), got {eta!r}")
    if not (0.0 <= theta <= math.pi + 1e-15):
        raise DomainError(f"polar angle must lie in [0, pi], got {theta!r}")
    rho = space.rho
    d = rho - eta
    s = math.sin(theta / 2.0)
    dist2 = d * d + 4.0 * rho * eta * s * s
    return (rho * rho - eta * eta) / dist2


def log_omega_theta(space: HyperbolicSpace, r: float, theta: np.ndarray) -> np.ndarray:
    """ln omega(theta) on the geodesic sphere of radius r, vectorized in theta.

    With e = exp(-r/rho) the kernel reduces to

        omega(theta) = e / (e^2 + (1 - e^2) sin^2(theta/2)),

    exact at both endpoints (ln omega(0) = r/rho, ln omega(pi) = -r/rho) and
    free of the rho - eta cancellation for every r, which matters once
    tanh(r/(2 rho)) rounds to 1. The denominator is assembled with logaddexp
    so the e^2 term keeps its scale -2r/rho even after exp(-2r/rho) itself
    underflows; evaluating it directly would hand theta = 0 a log(0) once
    r/rho exceeds a few hundred. This is the form the quadrature integrands
    are built on.
    """
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"geodesic radius must be finite and >= 0, got {r!r}")
    x = r / space.rho
    e2 = math.exp(-2.0 * x)
    s = np.sin(np.asarray(theta, dtype=float) / 2.0)
    # -inf from log(0) at the pole (and from log1p(-1) at r = 0) is the
    # correct log-space representation of a vanishing term, not an error
    with np.errstate(divide="ignore"):
        log_term = np.logaddexp(-2.0 * x, np.log1p(-e2) + 2.0 * np.log(s))
    return -x - log_term


def sphere_surface(dim: int, radius: float) -> float:
    """Surface measure of the dim-sphere of the given radius.

    sigma_dim = 2 pi^((dim+1)/2) / Gamma((dim+1)/2), times radius^dim.
    dim = 0 gives 2 (two points), dim = 1 gives 2 pi radius, dim = 2 gives
    4 pi radius^2.
    """
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise DomainError(f"sphere dimension must be an integer >= 0, got {dim!r}")
    radius = float(radius)
    if not math.isfinite(radius) or radius <= 0.0:
        raise DomainError(f"sphere radius must be finite and > 0, got {radius!r}")
    half = (dim + 1) / 2.0
    return 2.0 * math.pi**half / math.gamma(half) * radius**dim
