"""Radial eigenfunctions of the hyperbolic Laplacian via kernel powers.

Every power omega^alpha of the chord-ratio kernel is an eigenfunction of the
Laplace-Beltrami operator with eigenvalue

    lambda = (alpha k - alpha^2) / rho^2,

so averaging omega^alpha over a geodesic sphere of radius r produces the
radial eigenfunction normalized to 1 at the origin:

    phi_lambda(r) = (sigma_{k-1}/sigma_k) * Int_0^pi omega(theta)^alpha sin^{k-1}(theta) dtheta.

The map alpha -> lambda is a downward parabola with vertex at alpha = k/2,
which splits the real spectrum into three regimes:

* real branch, lambda < k^2/(4 rho^2): two real roots alpha and k - alpha
  give the same function; the root alpha >= k/2 is stored.
* critical, lambda = k^2/(4 rho^2): the double root alpha = k/2. Its
  eigenfunction V(r) (the "separator") bounds every oscillatory eigenfunction
  from above and every real-branch one from below.
* oscillatory branch, lambda > k^2/(4 rho^2): alpha = k/2 + i b with
  b = sqrt(lambda rho^2 - k^2/4) > 0. The imaginary parts cancel and the
  integrand is the real function omega^{k/2} cos(b ln omega).

All evaluation happens in the polar-angle chart of module geometry through
the adaptive Gauss-Kronrod engine; no complex arithmetic anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, UsageError
from .geometry import HyperbolicSpace, eta_from_r, log_omega_theta, sphere_surface
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "BranchKind",
    "SpectralParam",
    "QuadratureConfig",
    "DEFAULT_CONFIG",
    "spectral_from_lambda",
    "lambda_from_alpha",
    "phi_real_alpha",
    "phi_oscillatory",
    "phi_oscillatory_psi_form",
    "phi",
    "separator_V",
    "closed_form_k2",
    "taylor_moment",
]

DEFAULT_CONFIG = QuadratureConfig()

# Exponent threshold beyond which omega^alpha is evaluated in shifted
# log-space (|alpha| * r/rho bounds |alpha * ln omega|).
_LOG_SHIFT_THRESHOLD = 600.0


class BranchKind(str, Enum):
    REAL_ALPHA = "real_alpha"
    CRITICAL = "critical"
    OSCILLATORY = "oscillatory"


@dataclass(frozen=True)
class SpectralParam:
    """An eigenvalue together with its branch decomposition.

    ``alpha`` is the real part of the kernel power (>= k/2 on the real
    branch, exactly k/2 otherwise). ``b`` is the oscillation rate: None on
    the real branch, 0.0 at the junction, positive on the oscillatory branch.
    """

    lam: float
    kind: BranchKind
    alpha: float
    b: float | None


def _branch_tol(lam: float) -> float:
    return 1e-12 * max(1.0, abs(lam))


def spectral_from_lambda(space: HyperbolicSpace, lam: float) -> SpectralParam:
    """Decompose a real eigenvalue into its branch and kernel power.

    Values within 1e-12 (relative) of the junction k^2/(4 rho^2) are
    classified as critical so that neither sqrt picks up rounding noise.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise DomainError(f"eigenvalue must be finite, got {lam!r}")
    half_k = space.k / 2.0
    lam_c = space.lambda_critical
    if abs(lam - lam_c) <= _branch_tol(lam):
        return SpectralParam(lam=lam, kind=BranchKind.CRITICAL, alpha=half_k, b=0.0)
    rho2 = space.rho * space.rho
    if lam < lam_c:
        alpha = half_k + math.sqrt(half_k * half_k - lam * rho2)
        return SpectralParam(lam=lam, kind=BranchKind.REAL_ALPHA, alpha=alpha, b=None)
    b = math.sqrt(lam * rho2 - half_k * half_k)
    return SpectralParam(lam=lam, kind=BranchKind.OSCILLATORY, alpha=half_k, b=b)


def lambda_from_alpha(space: HyperbolicSpace, alpha: float | None = None,
                      b: float | None = None) -> float:
    """Eigenvalue of the kernel power: (alpha k - alpha^2)/rho^2 for a real
    power, (k^2/4 + b^2)/rho^2 for the power k/2 + i b."""
    rho2 = space.rho * space.rho
    if b is not None:
        b = float(b)
        if not math.isfinite(b):
            raise DomainError(f"oscillation rate must be finite, got {b!r}")
        if alpha is not None and abs(float(alpha) - space.k / 2.0) > 1e-12 * max(1.0, space.k):
            raise UsageError("with an oscillation rate the real part is fixed at k/2; "
                             f"got alpha={alpha!r}")
        return (space.k * space.k / 4.0 + b * b) / rho2
    if alpha is None:
        raise UsageError("either a real power alpha or an oscillation rate b is required")
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"kernel power must be finite, got {alpha!r}")
    return (alpha * space.k - alpha * alpha) / rho2


def _normalization(k: int) -> float:
    # sigma_{k-1}/sigma_k; makes the measure sin^{k-1} d theta a probability.
    return sphere_surface(k - 1, 1.0) / sphere_surface(k, 1.0)


def _check_radius(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"geodesic radius must be finite and >= 0, got {r!r}")
    return r


def phi_real_alpha(space: HyperbolicSpace, alpha: float, r: float,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Radial eigenfunction of the real kernel power alpha at radius r.

    Equals 1 at r = 0 for every alpha. For |alpha| r/rho beyond float
    comfort the integrand runs through the shifted log-space path; a result
    too large for float64 comes back as +inf (see quadrature.integrate).
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"kernel power must be finite, got {alpha!r}")
    r = _check_radius(r)
    if r == 0.0:
        return 1.0
    k = space.k

    if abs(alpha) * r / space.rho > _LOG_SHIFT_THRESHOLD:
        if k == 1:
            smooth = np.ones_like
        else:
            def smooth(theta):
                return np.sin(theta) ** (k - 1)
        value, _, _ = integrate(
            smooth, 0.0, math.pi, cfg,
            log_weight=lambda theta: alpha * log_omega_theta(space, r, theta))
        return _normalization(k) * value

    def f(theta):
        w = np.exp(alpha * log_omega_theta(space, r, theta))
        if k == 1:
            return w
        return w * np.sin(theta) ** (k - 1)

    value, _, _ = integrate(f, 0.0, math.pi, cfg)
    return _normalization(k) * value


def phi_oscillatory(space: HyperbolicSpace, b: float, r: float,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Radial eigenfunction on the oscillatory branch, rate b > 0.

    The phase b ln omega sweeps 2 b r/rho over theta in [0, pi], so the
    initial panel count scales with b r/(rho pi) to seed the refinement at
    the oscillation length.
    """
    b = float(b)
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"oscillation rate must be finite and > 0, got {b!r}")
    r = _check_radius(r)
    if r == 0.0:
        return 1.0
    k = space.k
    half_k = k / 2.0

    def f(theta):
        lw = log_omega_theta(space, r, theta)
        w = np.exp(half_k * lw) * np.cos(b * lw)
        if k == 1:
            return w
        return w * np.sin(theta) ** (k - 1)

    panels = max(16, cfg.base_panels_per_oscillation
                 * math.ceil(b * r / (space.rho * math.pi)))
    value, _, _ = integrate(f, 0.0, math.pi, cfg, initial_panels=panels)
    return _normalization(k) * value


def phi_oscillatory_psi_form(space: HyperbolicSpace, b: float, r: float,
                             cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Same function computed in the chord-angle chart; cross-check only.

    Integrates cos(b ln(l/q)) sin^{k-1}(psi) / (l+q) over psi in [0, pi/2]
    with the prefactor 4 rho (rho^2-eta^2)^{k/2} sigma_{k-1} / |S^k(rho)|.
    Agreement with phi_oscillatory validates the polar-angle reduction.
    """
    b = float(b)
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"oscillation rate must be finite and > 0, got {b!r}")
    r = _check_radius(r)
    if r == 0.0:
        return 1.0
    rho = space.rho
    k = space.k
    eta = eta_from_r(space, r)
    power_of_point = rho * rho - eta * eta
    prefactor = (4.0 * rho * power_of_point ** (k / 2.0) * sphere_surface(k - 1, 1.0)
                 / sphere_surface(k, rho))

    def f(psi):
        s = np.sin(psi)
        h = np.sqrt(rho * rho - (eta * s) * (eta * s))
        l = h + eta * np.cos(psi)
        q = power_of_point / l
        w = np.cos(b * np.log(l / q)) / (l + q)
        if k == 1:
            return w
        return w * s ** (k - 1)

    panels = max(16, cfg.base_panels_per_oscillation
                 * math.ceil(b * r / (space.rho * 2.0 * math.pi)))
    value, _, _ = integrate(f, 0.0, math.pi / 2.0, cfg, initial_panels=panels)
    return prefactor * value


def phi(space: HyperbolicSpace, lam: float, r: float,
        cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Radial eigenfunction for the eigenvalue lambda, any branch."""
    param = spectral_from_lambda(space, lam)
    if param.kind is BranchKind.REAL_ALPHA:
        return phi_real_alpha(space, param.alpha, r, cfg)
    if param.kind is BranchKind.CRITICAL:
        return separator_V(space, r, cfg)
    return phi_oscillatory(space, param.b, r, cfg)


def separator_V(space: HyperbolicSpace, r: float,
                cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """The critical eigenfunction V(r), the kernel power k/2.

    V separates the two regimes: real-branch eigenfunctions stay above it,
    oscillatory ones below. Strictly decreasing from V(0) = 1 toward 0.
    """
    return phi_real_alpha(space, space.k / 2.0, r, cfg)


def closed_form_k2(space: HyperbolicSpace, b: float, r: float) -> float:
    """Oscillatory branch in closed form, k = 2 only.

    sin(b r/rho) / (b sinh(r/rho)), with the b -> 0 limit (r/rho)/sinh(r/rho).
    Serves as the elementary reference the quadrature path is tested against.
    """
    if space.k != 2:
        raise UsageError(f"closed form requires k = 2, got k = {space.k}")
    b = float(b)
    if not math.isfinite(b) or b < 0.0:
        raise DomainError(f"oscillation rate must be finite and >= 0, got {b!r}")
    r = _check_radius(r)
    if r == 0.0:
        return 1.0
    x = r / space.rho
    if b == 0.0:
        return x / math.sinh(x)
    return math.sin(b * x) / (b * math.sinh(x))


def taylor_moment(space: HyperbolicSpace, m: int, r: float,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Normalized even log-moment of the kernel at the critical power:

        (sigma_{k-1}/sigma_k) * Int_0^pi omega^{k/2} (ln omega)^{2m} sin^{k-1}(theta) dtheta.

    These are the coefficients through which the oscillatory branch is an
    even power series in b:  phi = sum_m (-b^2)^m moment(m) / (2m)!.
    The odd moments vanish by the omega -> 1/omega symmetry of the kernel,
    which is why only even powers appear. m = 0 reproduces separator_V.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise DomainError(f"moment order must be an integer >= 0, got {m!r}")
    r = _check_radius(r)
    if r == 0.0:
        return 1.0 if m == 0 else 0.0
    k = space.k
    half_k = k / 2.0

    def f(theta):
        lw = log_omega_theta(space, r, theta)
        w = np.exp(half_k * lw) * lw ** (2 * m)
        if k == 1:
            return w
        return w * np.sin(theta) ** (k - 1)

    value, _, _ = integrate(f, 0.0, math.pi, cfg)
    return _normalization(k) * value
