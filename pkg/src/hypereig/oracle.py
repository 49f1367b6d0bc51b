"""Independent verification path: direct integration of the radial ODE.

A radial eigenfunction satisfies

    phi'' + (k/rho) coth(r/rho) phi' + lambda phi = 0,    phi(0) = 1, phi'(0) = 0,

with a regular singular point at r = 0. The solver starts a small distance
r0 from the origin on a truncated Frobenius series (whose coefficients are
derived by substituting a power series into the equation, independently of
the kernel representation) and integrates outward with a high-order embedded
Runge-Kutta pair. Nothing here touches the quadrature path, which is the
point: the two routes validate each other.

The Liouville substitution U = sinh(r/rho)^{k/2} phi turns the equation into
U'' + Q U = 0 with

    Q(r) = lambda - k^2/(4 rho^2) - k(k-2) / (4 rho^2 sinh^2(r/rho)),

whose limit lambda - k^2/(4 rho^2) at infinity explains the spectrum split:
negative limiting Q forces eventual non-vanishing, positive limiting Q forces
infinitely many zeros. liouville_Q exposes the potential for residual tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .errors import DomainError, IntegrationError, UsageError
from .geometry import HyperbolicSpace

__all__ = [
    "LimitBehavior",
    "SampleTable",
    "series_start",
    "solve_ode",
    "find_zeros",
    "count_zeros",
    "liouville_Q",
    "limit_at_infinity",
]

_ZERO_WINDOW = 1e-9


class LimitBehavior(Enum):
    """Behavior of a radial eigenfunction as r -> infinity."""

    INFINITY = "infinity"
    ONE = "one"
    ZERO = "zero"


@dataclass(frozen=True)
class SampleTable:
    """Ordered samples (r, value, derivative) of one integrated solution."""

    r: np.ndarray
    value: np.ndarray
    derivative: np.ndarray
    lam: float
    space: HyperbolicSpace

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        v = np.asarray(self.value, dtype=float)
        d = np.asarray(self.derivative, dtype=float)
        if not (r.ndim == 1 and r.shape == v.shape == d.shape and r.size >= 2):
            raise DomainError("sample table needs matching 1-D arrays with >= 2 entries")
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(v)) and np.all(np.isfinite(d))):
            raise DomainError("sample table entries must be finite")
        if r[0] <= 0.0 or np.any(np.diff(r) <= 0.0):
            raise DomainError("sample radii must be strictly increasing and positive")
        for name, arr in (("r", r), ("value", v), ("derivative", d)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return self.r.size

    @property
    def entries(self):
        """The samples as a list of (r, value, derivative) tuples."""
        return list(zip(self.r.tolist(), self.value.tolist(), self.derivative.tolist()))

    def _spline(self) -> CubicHermiteSpline:
        spline = getattr(self, "_spline_cache", None)
        if spline is None:
            spline = CubicHermiteSpline(self.r, self.value, self.derivative)
            object.__setattr__(self, "_spline_cache", spline)
        return spline

    def interpolate(self, r):
        """Cubic Hermite interpolation of the value at r inside the table range."""
        r_arr = np.asarray(r, dtype=float)
        if np.any(r_arr < self.r[0]) or np.any(r_arr > self.r[-1]):
            raise DomainError("interpolation point outside the sampled range")
        out = self._spline()(r_arr)
        return float(out) if np.isscalar(r) or r_arr.ndim == 0 else out


def series_start(space: HyperbolicSpace, lam: float, r0: float) -> tuple[float, float]:
    """Series value and derivative of the normalized solution at a small r0.

    phi(r) = 1 + c2 r^2 + c4 r^4 + O(r^6) with

        c2 = -lambda / (2 (k+1)),
        c4 = lambda (2k/(3 rho^2) + lambda) / (8 (k+1) (k+3)),

    obtained by matching powers of r after expanding coth(r/rho). The odd
    coefficients vanish (the solution is even in r). Restricted to
    r0 <= 1e-2 rho, where the dropped r^6 term stays below ~1e-9 for
    moderate lambda; integration starts use a far smaller r0.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise DomainError(f"eigenvalue must be finite, got {lam!r}")
    r0 = float(r0)
    if not (0.0 < r0 <= 1e-2 * space.rho):
        raise UsageError(f"series start requires 0 < r0 <= 1e-2*rho, got {r0!r}")
    k = space.k
    rho2 = space.rho * space.rho
    c2 = -lam / (2.0 * (k + 1))
    c4 = lam * (2.0 * k / (3.0 * rho2) + lam) / (8.0 * (k + 1) * (k + 3))
    value = 1.0 + c2 * r0 * r0 + c4 * r0**4
    derivative = 2.0 * c2 * r0 + 4.0 * c4 * r0**3
    return value, derivative


def solve_ode(space: HyperbolicSpace, lam: float, r_max: float, *,
              r0: float | None = None, grid_step: float | None = None,
              rtol: float = 1e-11) -> SampleTable:
    """Integrate the radial equation from a series start out to r_max.

    Uses the DOP853 embedded pair. The absolute tolerance is branch-aware:
    for lambda <= k^2/(4 rho^2) the solution never vanishes but may decay
    through many orders of magnitude, so control is essentially pure relative
    (the 1e-290 floor only keeps the error norm defined when a component is
    exactly zero; any realistic floor would drown the decaying solution in
    noise and fabricate sign changes); on the oscillatory branch genuine
    zeros make pure relative control ill-posed, so a 1e-16 floor is used.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise DomainError(f"eigenvalue must be finite, got {lam!r}")
    r_max = float(r_max)
    if not math.isfinite(r_max) or r_max <= 0.0:
        raise DomainError(f"r_max must be finite and > 0, got {r_max!r}")
    if r0 is None:
        r0 = 1e-4 * space.rho
    r0 = float(r0)
    if r0 >= r_max:
        raise UsageError(f"need r0 < r_max, got r0={r0!r}, r_max={r_max!r}")
    if grid_step is None:
        grid_step = 0.005 * space.rho
    grid_step = float(grid_step)
    if not math.isfinite(grid_step) or grid_step <= 0.0:
        raise DomainError(f"grid step must be finite and > 0, got {grid_step!r}")

    y0 = series_start(space, lam, r0)
    k = space.k
    rho = space.rho

    def rhs(t, y):
        coth = 1.0 / math.tanh(t / rho)
        return (y[1], -(k / rho) * coth * y[1] - lam * y[0])

    interior = np.arange(1, math.floor(r_max / grid_step) + 1) * grid_step
    interior = interior[(interior > r0) & (interior < r_max)]
    t_eval = np.concatenate([[r0], interior, [r_max]])

    atol = 1e-290 if lam <= space.lambda_critical else 1e-16
    sol = solve_ivp(rhs, (r0, r_max), y0, method="DOP853",
                    rtol=rtol, atol=atol, t_eval=t_eval)
    if not sol.success:
        last = float(sol.t[-1]) if sol.t.size else r0
        raise IntegrationError(f"ODE integration failed: {sol.message}", last_r=last)
    return SampleTable(r=sol.t, value=sol.y[0], derivative=sol.y[1],
                       lam=lam, space=space)


def find_zeros(space: HyperbolicSpace, lam: float, r_max: float, *,
               table: SampleTable | None = None) -> np.ndarray:
    """Zeros of the radial eigenfunction on (0, r_max], each located to 1e-9.

    Sign changes of the sample table are refined by bisection on the cubic
    Hermite interpolant. No derivative information is used in the refinement,
    which keeps near-tangent crossings from derailing it.
    """
    if table is None:
        table = solve_ode(space, lam, r_max)
    r, v = table.r, table.value
    zeros = []
    for i in range(len(v) - 1):
        if v[i] == 0.0:
            zeros.append(float(r[i]))
            continue
        if v[i] * v[i + 1] >= 0.0:
            continue
        lo, hi = float(r[i]), float(r[i + 1])
        f_lo = float(v[i])
        while hi - lo > _ZERO_WINDOW:
            mid = 0.5 * (lo + hi)
            f_mid = table.interpolate(mid)
            if f_mid == 0.0:
                lo = hi = mid
                break
            if (f_mid < 0.0) == (f_lo < 0.0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        zeros.append(0.5 * (lo + hi))
    if v[-1] == 0.0:
        zeros.append(float(r[-1]))
    return np.asarray(zeros)


def count_zeros(space: HyperbolicSpace, lam: float, r_max: float) -> int:
    """Number of zeros of the radial eigenfunction on (0, r_max]."""
    return int(find_zeros(space, lam, r_max).size)


def liouville_Q(space: HyperbolicSpace, lam: float, r: float) -> float:
    """Potential of the Liouville normal form U'' + Q U = 0.

    Q(r) = lambda - k^2/(4 rho^2) - k(k-2)/(4 rho^2 sinh^2(r/rho)). The sinh
    term vanishes identically for k = 2 (so r = 0 is allowed there) and
    decays like 4 k(k-2) e^{-2r/rho} otherwise, leaving the constant
    lambda - k^2/(4 rho^2) in the limit.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise DomainError(f"eigenvalue must be finite, got {lam!r}")
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"radius must be finite and >= 0, got {r!r}")
    k = space.k
    rho2 = space.rho * space.rho
    head = lam - k * k / (4.0 * rho2)
    coeff = k * (k - 2)
    if coeff == 0:
        return head
    if r == 0.0:
        raise DomainError("the Liouville potential has a pole at r = 0 for k != 2")
    x = r / space.rho
    # sinh overflows float64 near x ~ 710; beyond x ~ 350 the term is exactly
    # representable as 4 e^{-2x} to machine precision.
    inv_sinh2 = 4.0 * math.exp(-2.0 * x) if x > 350.0 else 1.0 / math.sinh(x) ** 2
    return head - coeff / (4.0 * rho2) * inv_sinh2


def limit_at_infinity(space: HyperbolicSpace, lam: float) -> LimitBehavior:
    """Limit classification of phi_lambda(r) as r -> infinity.

    The limit is determined by the sign of lambda alone: negative eigenvalues
    grow without bound, zero gives the constant function, positive decay to
    zero. This returns the analytic classification; numeric probes of the
    trend live in the test suite and the verify command.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise DomainError(f"eigenvalue must be finite, got {lam!r}")
    if lam < 0.0:
        return LimitBehavior.INFINITY
    if lam == 0.0:
        return LimitBehavior.ONE
    return LimitBehavior.ZERO
