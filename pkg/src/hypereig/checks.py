"""Runtime self-verification suites.

Each suite bundles executable checks of properties the library is supposed
to satisfy by construction: algebraic identities of the eigenfunction
family, agreement between the quadrature evaluator and an independent ODE
integration of the radial equation, the zero-set dichotomy across the
spectral threshold, large-radius limit behavior, and consistency of the
Monte Carlo sphere average with the one-dimensional reduction. The verify
endpoint and CLI subcommand are thin wrappers over run_suites.

Checks are deterministic: probe grids are fixed, and the Monte Carlo suite
derives its streams from the caller-supplied seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import eigenfn, oracle, radialize
from .errors import UsageError
from .geometry import HyperbolicSpace
from .oracle import LimitBehavior
from .quadrature import QuadratureConfig

__all__ = ["PropertyCheck", "SUITE_NAMES", "run_suites"]


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of a single verification check.

    worst is the extremal measured quantity and tol the threshold it was
    held against; detail states the comparison direction and the probe set,
    since some checks require worst <= tol and others worst > tol.
    """

    name: str
    passed: bool
    worst: float
    tol: float
    detail: str


SUITE_NAMES = ("identity", "oracle", "zeros", "limits", "mc")

# Identity checks difference two quadrature results, so they run tighter
# than the defaults; the engine bottoms out at its roundoff floor rather
# than erroring when these are unreachable.
_TIGHT = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-13)


def _suite_identity(seed: int) -> list[PropertyCheck]:
    checks = []

    worst = 0.0
    for k in (1, 2, 3, 5):
        space = HyperbolicSpace(rho=1.0, k=k)
        for alpha in np.linspace(-2.0, k / 2.0, 6):
            for r in (0.5, 1.0, 3.0):
                a = eigenfn.phi_real_alpha(space, float(alpha), r, _TIGHT)
                b = eigenfn.phi_real_alpha(space, float(k - alpha), r, _TIGHT)
                worst = max(worst, abs(a - b))
    checks.append(PropertyCheck(
        name="identity.two_point_symmetry",
        passed=worst <= 1e-10,
        worst=worst,
        tol=1e-10,
        detail="max |phi(alpha) - phi(k - alpha)|, k in {1,2,3,5}, "
               "alpha in [-2, k/2], r in {0.5, 1, 3}; require worst <= tol",
    ))

    # Second central difference in alpha must be positive: the integrand
    # omega^alpha is log-convex in alpha, and the integral inherits it.
    worst = math.inf
    h = 0.25
    for k in (1, 2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        centers = (-1.0, 0.0, k / 2.0, k / 2.0 + 1.0, k / 2.0 + 3.0)
        for alpha in centers:
            for r in (0.5, 1.0, 2.0):
                lo = eigenfn.phi_real_alpha(space, alpha - h, r, _TIGHT)
                mid = eigenfn.phi_real_alpha(space, alpha, r, _TIGHT)
                hi = eigenfn.phi_real_alpha(space, alpha + h, r, _TIGHT)
                worst = min(worst, lo - 2.0 * mid + hi)
    checks.append(PropertyCheck(
        name="identity.convexity_in_alpha",
        passed=worst > 0.0,
        worst=worst,
        tol=0.0,
        detail="min second central difference of phi in alpha (h=0.25), "
               "k in {1,2,3}, r in {0.5, 1, 2}; require worst > tol",
    ))

    # Real-branch values sit strictly above the separator V, oscillatory
    # values strictly below, at every positive radius.
    worst = math.inf
    for k in (1, 2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        for r in (0.5, 1.0, 2.0):
            v = eigenfn.separator_V(space, r, _TIGHT)
            for da in (0.1, 1.0, 3.0):
                above = eigenfn.phi_real_alpha(space, k / 2.0 + da, r, _TIGHT)
                worst = min(worst, above - v)
            for b in (0.5, 1.0, 3.0):
                below = eigenfn.phi_oscillatory(space, b, r, _TIGHT)
                worst = min(worst, v - below)
    checks.append(PropertyCheck(
        name="identity.ordering_about_separator",
        passed=worst > 0.0,
        worst=worst,
        tol=0.0,
        detail="min margin of phi(alpha > k/2) above V and V above phi(b), "
               "k in {1,2,3}, r in {0.5, 1, 2}; require worst > tol",
    ))

    worst = 0.0
    for k in (1, 2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        for b in (0.5, 1.0, 5.0):
            for r in (0.5, 2.0):
                a = eigenfn.phi_oscillatory(space, b, r, _TIGHT)
                c = eigenfn.phi_oscillatory_psi_form(space, b, r, _TIGHT)
                worst = max(worst, abs(a - c))
    checks.append(PropertyCheck(
        name="identity.chart_agreement",
        passed=worst <= 1e-9,
        worst=worst,
        tol=1e-9,
        detail="max |theta-chart phi - psi-chart phi|, k in {1,2,3}, "
               "b in {0.5, 1, 5}, r in {0.5, 2}; require worst <= tol",
    ))

    # Partial sums of the even moment series reproduce the oscillatory
    # value at small b.
    worst = 0.0
    b, r = 0.5, 1.0
    for k in (1, 2):
        space = HyperbolicSpace(rho=1.0, k=k)
        target = eigenfn.phi_oscillatory(space, b, r, _TIGHT)
        total = 0.0
        for m in range(9):
            total += ((-b * b) ** m
                      / math.factorial(2 * m)
                      * eigenfn.taylor_moment(space, m, r, _TIGHT))
        worst = max(worst, abs(total - target))
    checks.append(PropertyCheck(
        name="identity.moment_series",
        passed=worst <= 1e-8,
        worst=worst,
        tol=1e-8,
        detail="max |sum_{m<=8} (-b^2)^m moment_m/(2m)! - phi(b)| at "
               "b=0.5, r=1, k in {1,2}; require worst <= tol",
    ))

    # On radii r <= pi*rho/p the map lambda -> phi is strictly decreasing
    # up to lambda(b=p); probed at p = 2.
    worst = math.inf
    for k in (1, 2):
        space = HyperbolicSpace(rho=1.0, k=k)
        lam_max = space.lambda_critical + 4.0
        lams = np.concatenate([
            np.array([-5.0, -3.0, -1.0, 0.0]),
            np.linspace(0.5 * space.lambda_critical, lam_max, 6),
        ])
        for r in (0.5, 1.5):
            vals = [eigenfn.phi(space, float(lam), r, _TIGHT) for lam in lams]
            for a, b_ in zip(vals, vals[1:]):
                worst = min(worst, a - b_)
    checks.append(PropertyCheck(
        name="identity.monotone_in_lambda",
        passed=worst > 0.0,
        worst=worst,
        tol=0.0,
        detail="min consecutive drop of phi along increasing lambda up to "
               "lambda(b=2), k in {1,2}, r in {0.5, 1.5}; require worst > tol",
    ))

    return checks


def _suite_oracle(seed: int) -> list[PropertyCheck]:
    checks = []

    worst = 0.0
    r_probe = np.array([0.25, 0.5, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0])
    for k in (1, 2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        lc = space.lambda_critical
        for lam in (-5.0, -1.0, 0.0, 0.5 * lc, lc, 2.0 * lc, 10.0):
            table = oracle.solve_ode(space, lam, 10.0)
            ref = table.interpolate(r_probe)
            for r, f_ode in zip(r_probe, ref):
                f_quad = eigenfn.phi(space, lam, float(r))
                scale = max(1.0, abs(f_ode))
                worst = max(worst, abs(f_quad - f_ode) / scale)
    checks.append(PropertyCheck(
        name="oracle.quadrature_vs_ode",
        passed=worst <= 1e-8,
        worst=worst,
        tol=1e-8,
        detail="max |phi_quadrature - phi_ode| / max(1, |phi_ode|), "
               "k in {1,2,3}, 7 eigenvalues per k, r in [0.25, 10]; "
               "require worst <= tol",
    ))

    # The transformed solution U = sinh(r/rho)^{k/2} phi must satisfy
    # U'' + Q U = 0; checked by central differences on a fine table.
    worst = 0.0
    cases = [(1, 2.0), (2, 2.0), (3, 6.0)]
    for k, lam in cases:
        space = HyperbolicSpace(rho=1.0, k=k)
        table = oracle.solve_ode(space, lam, 6.0, grid_step=1e-3)
        mask = (table.r >= 0.5) & (table.r <= 6.0)
        r = table.r[mask]
        u = np.sinh(r) ** (k / 2.0) * table.value[mask]
        h = r[1] - r[0]
        u_dd = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
        q = np.array([oracle.liouville_Q(space, lam, float(x))
                      for x in r[1:-1]])
        resid = np.abs(u_dd + q * u[1:-1]) / np.max(np.abs(u))
        worst = max(worst, float(resid.max()))
    checks.append(PropertyCheck(
        name="oracle.liouville_residual",
        passed=worst <= 1e-5,
        worst=worst,
        tol=1e-5,
        detail="max |U'' + Q U| / max|U| with U = sinh(r/rho)^{k/2} phi on "
               "r in [0.5, 6], h=1e-3, (k, lambda) in {(1,2),(2,2),(3,6)}; "
               "require worst <= tol",
    ))

    worst = 0.0
    space = HyperbolicSpace(rho=1.0, k=2)
    for r0 in (1e-3, 1e-2):
        value, _ = oracle.series_start(space, 2.0, r0)
        worst = max(worst, abs(value - eigenfn.closed_form_k2(space, 1.0, r0)))
    checks.append(PropertyCheck(
        name="oracle.series_start_vs_closed_form",
        passed=worst <= 1e-9,
        worst=worst,
        tol=1e-9,
        detail="max |series start - closed form| at rho=1, k=2, lambda=2, "
               "r0 in {1e-3, 1e-2}; require worst <= tol",
    ))

    return checks


def _suite_zeros(seed: int) -> list[PropertyCheck]:
    checks = []

    worst = 0
    for k in (1, 2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        lc = space.lambda_critical
        for lam in (-1.0, 0.0, 0.5 * lc, lc):
            worst = max(worst, oracle.count_zeros(space, lam, 50.0))
    checks.append(PropertyCheck(
        name="zeros.none_at_or_below_threshold",
        passed=worst == 0,
        worst=float(worst),
        tol=0.0,
        detail="max zero count on (0, 50] over lambda <= k^2/(4 rho^2), "
               "k in {1,2,3}; require worst == tol",
    ))

    space = HyperbolicSpace(rho=1.0, k=2)
    zeros = oracle.find_zeros(space, 2.0, 10.0)
    expected = np.array([math.pi, 2.0 * math.pi, 3.0 * math.pi])
    if zeros.size == 3:
        worst = float(np.max(np.abs(zeros - expected)))
    else:
        worst = math.inf
    checks.append(PropertyCheck(
        name="zeros.locations_match_closed_form",
        passed=worst <= 1e-6,
        worst=worst,
        tol=1e-6,
        detail="max |zero - n pi| for the three zeros of (rho=1, k=2, "
               "lambda=2) on (0, 10]; require worst <= tol",
    ))

    worst = math.inf
    min_near = math.inf
    for k in (2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        lam = 2.5 * space.lambda_critical
        near = oracle.count_zeros(space, lam, 10.0)
        far = oracle.count_zeros(space, lam, 20.0)
        min_near = min(min_near, near)
        worst = min(worst, far - near)
    checks.append(PropertyCheck(
        name="zeros.count_grows_with_range",
        passed=worst >= 1.0 and min_near >= 1,
        worst=float(worst),
        tol=1.0,
        detail="min increase in zero count from (0, 10] to (0, 20] at "
               "lambda = 2.5 * k^2/(4 rho^2), k in {2,3}, each count >= 1; "
               "require worst >= tol",
    ))

    return checks


def _suite_limits(seed: int) -> list[PropertyCheck]:
    checks = []
    space = HyperbolicSpace(rho=1.0, k=2)
    r_far = 30.0

    table = oracle.solve_ode(space, 0.0, r_far)
    worst = abs(table.value[-1] - 1.0)
    kind = oracle.limit_at_infinity(space, 0.0)
    checks.append(PropertyCheck(
        name="limits.constant_branch",
        passed=worst <= 1e-6 and kind is LimitBehavior.ONE,
        worst=worst,
        tol=1e-6,
        detail=f"|phi(30) - 1| at lambda=0, classified {kind.name}; "
               "require worst <= tol and classification ONE",
    ))

    table = oracle.solve_ode(space, -3.0, r_far)
    worst = float(table.value[-1])
    kind = oracle.limit_at_infinity(space, -3.0)
    checks.append(PropertyCheck(
        name="limits.growing_branch",
        passed=worst > 1e3 and kind is LimitBehavior.INFINITY,
        worst=worst,
        tol=1e3,
        detail=f"phi(30) at lambda=-3, classified {kind.name}; "
               "require worst > tol and classification INFINITY",
    ))

    table = oracle.solve_ode(space, 2.0, r_far)
    worst = abs(float(table.value[-1]))
    kind = oracle.limit_at_infinity(space, 2.0)
    checks.append(PropertyCheck(
        name="limits.decaying_branch",
        passed=worst < 1e-3 and kind is LimitBehavior.ZERO,
        worst=worst,
        tol=1e-3,
        detail=f"|phi(30)| at lambda=2, classified {kind.name}; "
               "require worst < tol and classification ZERO",
    ))

    return checks


def _suite_mc(seed: int) -> list[PropertyCheck]:
    configs = [
        (1, 0.5, 1.0),
        (2, 1.0, 1.0),
        (2, 3.0, 1.0),
        (3, -1.0, 2.0),
    ]
    n = 200_000
    worst = 0.0
    for i, (k, alpha, r) in enumerate(configs):
        space = HyperbolicSpace(rho=1.0, k=k)
        mean, stderr = radialize.sphere_average(space, alpha, r, n, seed + i)
        target = eigenfn.phi_real_alpha(space, alpha, r)
        worst = max(worst, abs(mean - target) / stderr)
    return [PropertyCheck(
        name="mc.sphere_average_agreement",
        passed=worst <= 4.0,
        worst=worst,
        tol=4.0,
        detail="max |MC mean - phi| / stderr over 4 (k, alpha, r) configs, "
               "n=200000 each; require worst <= tol",
    )]


_SUITES = {
    "identity": _suite_identity,
    "oracle": _suite_oracle,
    "zeros": _suite_zeros,
    "limits": _suite_limits,
    "mc": _suite_mc,
}


def run_suites(names, seed: int = 0) -> list[PropertyCheck]:
    """Run the named suites ("all" expands to every suite) in a fixed order."""
    requested = list(names)
    if any(n == "all" for n in requested):
        requested = list(SUITE_NAMES)
    seen = []
    for n in requested:
        if n not in _SUITES:
            raise UsageError(
                f"unknown suite {n!r}; choose from {('all',) + SUITE_NAMES}")
        if n not in seen:
            seen.append(n)
    results = []
    for n in SUITE_NAMES:
        if n in seen:
            results.extend(_SUITES[n](seed))
    return results
