"""Eigenvalue recovery from sphere-average observations.

One measured value phi_lambda(r) pins the eigenvalue down as follows. The
separator V(r) splits the observation space:

* value >= V(r): the eigenvalue lies on the real branch, where phi is
  strictly increasing in the kernel power alpha >= k/2. One observation
  suffices for any r; bisection in alpha recovers it (recover_large).
* 0 < |value| < V(r): the eigenvalue may be oscillatory. The observation
  itself caps the oscillation rate at a computable p = b_upper_bound(obs),
  and phi is strictly decreasing in b as long as r <= pi rho / p. If the
  observation radius is inside that window, bisection in b on [0, p]
  recovers the eigenvalue from the single value (recover_bounded); if not,
  exactly one additional sample at r0 = pi rho / p settles it
  (recover_two_radii).
* value = 0: no information; infinitely many eigenfunctions vanish there.

All bisections certify their bracket at every step: the bracket endpoints
must straddle the target value, or the solver aborts rather than report a
fabricated root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import (
    ConvergenceError,
    DomainError,
    InconsistentObservationError,
    RadiusTooLargeError,
    UsageError,
    ValueOutOfRangeError,
    ZeroObservationError,
)
from .eigenfn import (
    BranchKind,
    DEFAULT_CONFIG,
    QuadratureConfig,
    lambda_from_alpha,
    phi,
    phi_oscillatory,
    phi_real_alpha,
    separator_V,
    spectral_from_lambda,
)
from .geometry import HyperbolicSpace, eta_from_r, sphere_surface

__all__ = [
    "Observation",
    "ObservationClass",
    "RecoveryResult",
    "OBSERVATION_CONSISTENCY_TOL",
    "classify",
    "recover_large",
    "b_upper_bound",
    "recover_bounded",
    "recover_two_radii",
    "recover",
]

# Relative gate for declaring two observations incompatible with any single
# eigenvalue. Deliberately looser than the solver tolerance: an observation
# quoted to six decimals is off by up to ~5e-7 through no fault of its own,
# which the recovery must absorb while still reporting the exact residual.
OBSERVATION_CONSISTENCY_TOL = 1e-5

_ALPHA_CAP = 1e6
_MAX_BISECT = 200


@dataclass(frozen=True)
class Observation:
    """One sphere-average sample: the value of phi_lambda at radius r."""

    r: float
    value: float

    def __post_init__(self):
        r = float(self.r)
        v = float(self.value)
        if not math.isfinite(r) or r <= 0.0:
            raise DomainError(f"observation radius must be finite and > 0, got {self.r!r}")
        if not math.isfinite(v):
            raise DomainError(f"observed value must be finite, got {self.value!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "value", v)


class ObservationClass(Enum):
    LARGE = "large"
    SMALL = "small"
    ZERO = "zero"


@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of a recovery: the eigenvalue, how it was reached, how well.

    residual is the largest |phi_recovered(r) - value| over the observations
    used; b_bound carries the oscillation cap p when one was computed;
    iterations counts eigenfunction evaluations spent bracketing and
    bisecting.
    """

    lam: float
    branch: BranchKind
    radii_used: int
    b_bound: float | None
    residual: float
    iterations: int


def _solver_tol(cfg: QuadratureConfig) -> float:
    return max(10.0 * cfg.abs_tol, 1e-10)


def _bisect(f: Callable[[float], float], lo: float, hi: float,
            f_lo: float, f_hi: float, xtol: float) -> tuple[float, int]:
    """Bisection with a certified bracket; returns (root, evaluations).

    The endpoint values must straddle zero on entry and keep straddling it
    after every step; a violation means the premise (monotonicity of f) was
    wrong and the solver refuses to continue.
    """
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    if (f_lo < 0.0) == (f_hi < 0.0):
        raise ConvergenceError(
            f"bracket [{lo:.6g}, {hi:.6g}] does not straddle the target "
            f"(f_lo={f_lo:.3e}, f_hi={f_hi:.3e})")
    evals = 0
    while hi - lo > xtol and evals < _MAX_BISECT:
        assert (f_lo < 0.0) != (f_hi < 0.0), "bisection bracket lost its sign change"
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        evals += 1
        if f_mid == 0.0:
            return mid, evals
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi), evals


def classify(space: HyperbolicSpace, obs: Observation,
             cfg: QuadratureConfig = DEFAULT_CONFIG) -> ObservationClass:
    """Which side of the separator the observation falls on.

    LARGE means value >= V(r) up to solver tolerance (real branch, one
    radius suffices); ZERO means exactly zero (no information); SMALL is
    everything else (oscillation possible, bound needed).
    """
    if obs.value == 0.0:
        return ObservationClass.ZERO
    v_sep = separator_V(space, obs.r, cfg)
    if obs.value >= v_sep - _solver_tol(cfg) * max(1.0, v_sep):
        return ObservationClass.LARGE
    return ObservationClass.SMALL


def recover_large(space: HyperbolicSpace, obs: Observation,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> RecoveryResult:
    """Recover the eigenvalue from one observation at or above the separator.

    phi is strictly increasing in the power alpha on [k/2, inf), so the
    bracket starts at [k/2, k] (phi = V and phi = 1) and doubles the upper
    end until it clears the observation; values surviving the doubling past
    alpha = 1e6 are numerically unattainable.
    """
    tol = _solver_tol(cfg)
    v_sep = separator_V(space, obs.r, cfg)
    if obs.value < v_sep - tol * max(1.0, v_sep) or obs.value <= 0.0:
        raise ValueOutOfRangeError(
            f"value {obs.value!r} lies below the separator {v_sep!r} at r={obs.r!r}; "
            "the one-radius recovery needs value >= V(r)")
    if abs(obs.value - v_sep) <= tol * max(1.0, abs(obs.value)):
        return RecoveryResult(lam=space.lambda_critical, branch=BranchKind.CRITICAL,
                              radii_used=1, b_bound=None,
                              residual=abs(obs.value - v_sep), iterations=0)

    k = space.k

    def f(alpha: float) -> float:
        return phi_real_alpha(space, alpha, obs.r, cfg) - obs.value

    lo, f_lo = k / 2.0, v_sep - obs.value
    hi = float(k)
    f_hi = 1.0 - obs.value
    evals = 0
    while f_hi < 0.0:
        lo, f_lo = hi, f_hi
        hi *= 2.0
        if hi > _ALPHA_CAP:
            raise ConvergenceError(
                f"no kernel power below {_ALPHA_CAP:.0e} reaches value {obs.value!r} "
                f"at r={obs.r!r}; the observation is numerically unattainable")
        f_hi = f(hi)
        evals += 1

    alpha_star, n = _bisect(f, lo, hi, f_lo, f_hi, xtol=1e-13 * max(1.0, hi))
    evals += n
    lam = lambda_from_alpha(space, alpha=alpha_star)
    residual = abs(phi_real_alpha(space, alpha_star, obs.r, cfg) - obs.value)
    evals += 1
    if residual > tol * max(1.0, abs(obs.value)):
        raise ConvergenceError(
            f"bisection residual {residual:.3e} exceeds solver tolerance",
            achieved=residual, requested=tol * max(1.0, abs(obs.value)))
    return RecoveryResult(lam=lam, branch=spectral_from_lambda(space, lam).kind,
                          radii_used=1, b_bound=None, residual=residual,
                          iterations=evals)


def b_upper_bound(space: HyperbolicSpace, obs: Observation) -> float:
    """Cap p on the oscillation rate implied by one nonzero observation.

    Any eigenfunction whose sphere average at obs.r equals obs.value has
    b <= p. The cap comes from dimension-specific envelope estimates of the
    oscillatory integral:

        k = 1:  p = max(2/pi, T1 / value^2),  T1 = 9 r (rho^2-eta^2) / (rho eta^2 pi^2)
        k = 2:  p = T2 / |value|,             T2 = 1 / sinh(r/rho)
        k >= 3: p = T3 / |value|,             T3 = (k-2) pi rho (rho^2-eta^2)^{k/2}
                                                    sigma_{k-1} / (2 eta |S^k(rho)|)

    The bound degrades as |value| -> 0, which is the correct behavior: a
    tiny value constrains the oscillation rate only weakly.
    """
    if obs.value == 0.0:
        raise ZeroObservationError(
            "a zero observation carries no information about the eigenvalue")
    rho = space.rho
    k = space.k
    eta = eta_from_r(space, obs.r)
    power_of_point = rho * rho - eta * eta
    if k == 1:
        t1 = 9.0 * obs.r * power_of_point / (rho * eta * eta * math.pi * math.pi)
        return max(2.0 / math.pi, t1 / (obs.value * obs.value))
    if k == 2:
        t2 = 1.0 / math.sinh(obs.r / rho)
        return t2 / abs(obs.value)
    t3 = ((k - 2) * math.pi * rho * power_of_point ** (k / 2.0)
          * sphere_surface(k - 1, 1.0) / (2.0 * eta * sphere_surface(k, rho)))
    return t3 / abs(obs.value)


def recover_bounded(space: HyperbolicSpace, obs: Observation, p: float,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> RecoveryResult:
    """Recover the eigenvalue from one observation inside the monotone window.

    Given a cap b <= p, phi is strictly decreasing in b on [0, p] whenever
    obs.r <= pi rho / p, so the value determines b by bisection between the
    separator (b = 0) and the b = p envelope. Raises RadiusTooLargeError
    (with the admissible radius attached) when the window does not contain
    obs.r, and ValueOutOfRangeError when no b in [0, p] attains the value.
    """
    p = float(p)
    if not math.isfinite(p) or p <= 0.0:
        raise DomainError(f"oscillation cap must be finite and > 0, got {p!r}")
    r_admissible = math.pi * space.rho / p
    if obs.r > r_admissible * (1.0 + 1e-12):
        raise RadiusTooLargeError(
            f"observation radius {obs.r!r} exceeds the monotone window "
            f"pi*rho/p = {r_admissible!r}; a second observation at that radius "
            "or below is required", required_r0=r_admissible)

    tol = _solver_tol(cfg)
    v_sep = separator_V(space, obs.r, cfg)
    if obs.value > v_sep + tol * max(1.0, v_sep):
        raise ValueOutOfRangeError(
            f"value {obs.value!r} exceeds the separator {v_sep!r} at r={obs.r!r}; "
            "values above V(r) belong to the one-radius recovery")
    if abs(obs.value - v_sep) <= tol * max(1.0, abs(obs.value)):
        return RecoveryResult(lam=space.lambda_critical, branch=BranchKind.CRITICAL,
                              radii_used=1, b_bound=p,
                              residual=abs(obs.value - v_sep), iterations=0)

    floor = phi_oscillatory(space, p, obs.r, cfg)
    if obs.value < floor - tol * max(1.0, abs(floor)):
        raise ValueOutOfRangeError(
            f"value {obs.value!r} lies below phi at the cap b={p!r} "
            f"({floor!r}); no oscillation rate within the bound attains it")

    def f(b: float) -> float:
        return phi_oscillatory(space, b, obs.r, cfg) - obs.value

    b_star, evals = _bisect(f, 0.0, p, v_sep - obs.value, floor - obs.value,
                            xtol=1e-13 * max(1.0, p))
    lam = lambda_from_alpha(space, b=b_star)
    if b_star > 0.0:
        residual = abs(phi_oscillatory(space, b_star, obs.r, cfg) - obs.value)
        evals += 1
    else:
        residual = abs(v_sep - obs.value)
    if residual > tol * max(1.0, abs(obs.value)):
        raise ConvergenceError(
            f"bisection residual {residual:.3e} exceeds solver tolerance",
            achieved=residual, requested=tol * max(1.0, abs(obs.value)))
    return RecoveryResult(lam=lam, branch=spectral_from_lambda(space, lam).kind,
                          radii_used=1, b_bound=p, residual=residual,
                          iterations=evals)


def recover_two_radii(space: HyperbolicSpace, obs1: Observation,
                      sampler: Callable[[float], float] | None,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> RecoveryResult:
    """Recovery below the separator, requesting a second radius if needed.

    The observation's own bound p decides: if obs1.r already lies inside the
    monotone window pi rho / p the value alone suffices; otherwise the sampler
    is asked for one value at exactly r0 = pi rho / p (the largest admissible
    radius, where eigenfunctions have separated the most) and the recovery
    runs there. Either way the recovered eigenfunction is checked against
    every observation consumed, and the worst residual is reported.
    """
    if obs1.value == 0.0:
        raise ZeroObservationError(
            "a zero observation carries no information about the eigenvalue")
    tol = _solver_tol(cfg)
    v_sep = separator_V(space, obs1.r, cfg)
    if obs1.value >= v_sep - tol * max(1.0, v_sep):
        raise UsageError(
            f"value {obs1.value!r} is at or above the separator {v_sep!r}; "
            "use the one-radius recovery for large values")

    p = b_upper_bound(space, obs1)
    r0 = math.pi * space.rho / p
    if obs1.r <= r0 * (1.0 + 1e-12):
        return recover_bounded(space, obs1, p, cfg)

    if sampler is None:
        raise RadiusTooLargeError(
            f"observation radius {obs1.r!r} exceeds the monotone window "
            f"pi*rho/p = {r0!r} and no sampler is available; supply a second "
            f"observation at radius <= {r0!r}", required_r0=r0)
    value0 = float(sampler(r0))
    result = recover_bounded(space, Observation(r=r0, value=value0), p, cfg)

    predicted = phi(space, result.lam, obs1.r, cfg)
    residual1 = abs(predicted - obs1.value)
    if residual1 > OBSERVATION_CONSISTENCY_TOL * max(1.0, abs(obs1.value)):
        raise InconsistentObservationError(
            f"recovered eigenvalue {result.lam!r} predicts {predicted!r} at "
            f"r={obs1.r!r} but {obs1.value!r} was observed; the two values do "
            "not come from one radial eigenfunction", residual=residual1)
    return RecoveryResult(lam=result.lam, branch=result.branch, radii_used=2,
                          b_bound=p, residual=max(result.residual, residual1),
                          iterations=result.iterations)


def recover(space: HyperbolicSpace, obs: Observation,
            cfg: QuadratureConfig = DEFAULT_CONFIG, *,
            obs2: Observation | None = None,
            sampler: Callable[[float], float] | None = None) -> RecoveryResult:
    """Full pipeline: classify, then the appropriate recovery path.

    obs2 supplies a pre-measured second observation; sampler supplies one on
    demand at the radius the algorithm chooses. At most one of them may be
    given. A second observation is consumed only when the first one cannot
    settle the eigenvalue alone.
    """
    if obs2 is not None and sampler is not None:
        raise UsageError("supply either a second observation or a sampler, not both")
    cls = classify(space, obs, cfg)
    if cls is ObservationClass.ZERO:
        raise ZeroObservationError(
            "a zero observation carries no information about the eigenvalue")
    if cls is ObservationClass.LARGE:
        return recover_large(space, obs, cfg)
    if obs2 is None:
        return recover_two_radii(space, obs, sampler, cfg)

    p = b_upper_bound(space, obs)
    r_admissible = math.pi * space.rho / p
    if obs.r <= r_admissible * (1.0 + 1e-12):
        primary, secondary = obs, obs2
    elif obs2.r <= r_admissible * (1.0 + 1e-12):
        primary, secondary = obs2, obs
    else:
        raise RadiusTooLargeError(
            f"both observation radii exceed the monotone window pi*rho/p = "
            f"{r_admissible!r}", required_r0=r_admissible)
    result = recover_bounded(space, primary, p, cfg)
    predicted = phi(space, result.lam, secondary.r, cfg)
    residual2 = abs(predicted - secondary.value)
    if residual2 > OBSERVATION_CONSISTENCY_TOL * max(1.0, abs(secondary.value)):
        raise InconsistentObservationError(
            f"recovered eigenvalue {result.lam!r} predicts {predicted!r} at "
            f"r={secondary.r!r} but {secondary.value!r} was observed; the two "
            "values do not come from one radial eigenfunction", residual=residual2)
    return RecoveryResult(lam=result.lam, branch=result.branch, radii_used=2,
                          b_bound=p, residual=max(result.residual, residual2),
                          iterations=result.iterations)
