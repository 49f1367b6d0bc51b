"""Eigenvalue recovery: classification, bounds, one- and two-radius paths."""

import math

import pytest

from hypereig.eigenfn import BranchKind, phi, separator_V, spectral_from_lambda
from hypereig.errors import (
    DomainError,
    InconsistentObservationError,
    RadiusTooLargeError,
    UsageError,
    ValueOutOfRangeError,
    ZeroObservationError,
)
from hypereig.geometry import HyperbolicSpace
from hypereig.inversion import (
    Observation,
    ObservationClass,
    b_upper_bound,
    classify,
    recover,
    recover_bounded,
    recover_large,
    recover_two_radii,
)

SPACE2 = HyperbolicSpace(rho=1.0, k=2)
SIN1_OVER_SINH1 = math.sin(1.0) / math.sinh(1.0)
SIN5_OVER_SINH5 = math.sin(5.0) / math.sinh(5.0)


def true_phi_sampler(lam):
    return lambda r: phi(SPACE2, lam, r)


# --- observations and classification -------------------------------------

def test_observation_validation():
    obs = Observation(r=1, value=2)
    assert obs.r == 1.0 and obs.value == 2.0
    for r, v in ((0.0, 1.0), (-1.0, 1.0), (math.inf, 1.0), (1.0, math.nan)):
        with pytest.raises(DomainError):
            Observation(r=r, value=v)


def test_classification():
    assert classify(SPACE2, Observation(1.0, 1.0)) is ObservationClass.LARGE
    assert classify(SPACE2, Observation(1.0, SIN1_OVER_SINH1)) is ObservationClass.SMALL
    assert classify(SPACE2, Observation(1.0, 0.0)) is ObservationClass.ZERO
    # the separator itself counts as LARGE
    v = separator_V(SPACE2, 1.0)
    assert classify(SPACE2, Observation(1.0, v)) is ObservationClass.LARGE


# --- one radius, at or above the separator --------------------------------

def test_recover_large_constant():
    res = recover_large(SPACE2, Observation(1.0, 1.0))
    assert abs(res.lam) < 1e-10
    assert res.branch is BranchKind.REAL_ALPHA
    assert res.radii_used == 1
    assert res.b_bound is None


def test_recover_large_negative_eigenvalue():
    res = recover_large(SPACE2, Observation(1.0, math.cosh(1.0)))
    assert abs(res.lam + 3.0) < 1e-9
    assert res.residual < 1e-9


def test_recover_large_critical_tie():
    res = recover_large(SPACE2, Observation(1.0, separator_V(SPACE2, 1.0)))
    assert res.lam == SPACE2.lambda_critical == 1.0
    assert res.branch is BranchKind.CRITICAL
    assert res.iterations == 0


def test_recover_large_rejects_small_value():
    with pytest.raises(ValueOutOfRangeError):
        recover_large(SPACE2, Observation(1.0, 0.5))


# --- oscillation cap -------------------------------------------------------

def test_bound_matches_envelope_k2():
    p = b_upper_bound(SPACE2, Observation(1.0, SIN1_OVER_SINH1))
    assert p == pytest.approx(1.0 / math.sin(1.0), rel=1e-12)


def test_bound_scales_inversely_with_value():
    p = b_upper_bound(SPACE2, Observation(1.0, 0.001))
    assert p == pytest.approx(1.0 / (math.sinh(1.0) * 0.001), rel=1e-12)


def test_bound_floor_k1():
    space = HyperbolicSpace(rho=1.0, k=1)
    assert b_upper_bound(space, Observation(1.0, 3.0)) == 2.0 / math.pi


def test_bound_rejects_zero():
    with pytest.raises(ZeroObservationError):
        b_upper_bound(SPACE2, Observation(1.0, 0.0))


def test_bound_always_covers_true_rate():
    # the cap must sit at or above the b that generated the value
    for k in (1, 2, 3):
        space = HyperbolicSpace(rho=1.0, k=k)
        for b in (0.3, 1.0, 2.5):
            for r in (0.5, 1.0, 2.0):
                value = phi(space, space.lambda_critical + b * b, r)
                if value == 0.0:
                    continue
                assert b_upper_bound(space, Observation(r, value)) >= b


# --- one radius, below the separator ---------------------------------------

def test_recover_bounded_inside_window():
    p = 1.0 / math.sin(1.0)
    res = recover_bounded(SPACE2, Observation(1.0, SIN1_OVER_SINH1), p)
    assert res.lam == pytest.approx(2.0, rel=1e-9)
    assert res.branch is BranchKind.OSCILLATORY
    assert res.radii_used == 1
    assert res.b_bound == p
    assert res.iterations > 0


def test_recover_bounded_critical_tie():
    res = recover_bounded(SPACE2, Observation(1.0, separator_V(SPACE2, 1.0)), 2.0)
    assert res.lam == 1.0
    assert res.branch is BranchKind.CRITICAL


def test_recover_bounded_window_guard():
    with pytest.raises(RadiusTooLargeError) as exc:
        recover_bounded(SPACE2, Observation(3.0, 0.1), 1.0 / math.sin(1.0))
    assert exc.value.required_r0 == pytest.approx(math.pi * math.sin(1.0), abs=1e-6)


def test_recover_bounded_value_range_guards():
    p = 1.0 / math.sin(1.0)
    with pytest.raises(ValueOutOfRangeError):
        recover_bounded(SPACE2, Observation(1.0, 0.9), p)
    with pytest.raises(ValueOutOfRangeError):
        recover_bounded(SPACE2, Observation(1.0, 0.1), p)


def test_recover_bounded_cap_guard():
    with pytest.raises(DomainError):
        recover_bounded(SPACE2, Observation(1.0, 0.5), 0.0)
    with pytest.raises(DomainError):
        recover_bounded(SPACE2, Observation(1.0, 0.5), math.inf)


# --- two radii --------------------------------------------------------------

def test_two_radii_with_sampler():
    res = recover_two_radii(SPACE2, Observation(5.0, SIN5_OVER_SINH5),
                            true_phi_sampler(2.0))
    assert res.lam == pytest.approx(2.0, rel=1e-9)
    assert res.radii_used == 2
    assert res.b_bound == pytest.approx(1.0 / abs(math.sin(5.0)), rel=1e-6)


def test_two_radii_sampler_not_consulted_inside_window():
    def refuse(_r):
        raise AssertionError("sampler must not be called for an admissible radius")

    res = recover_two_radii(SPACE2, Observation(1.0, SIN1_OVER_SINH1), refuse)
    assert res.lam == pytest.approx(2.0, rel=1e-9)
    assert res.radii_used == 1


def test_two_radii_without_sampler_requests_radius():
    with pytest.raises(RadiusTooLargeError) as exc:
        recover_two_radii(SPACE2, Observation(5.0, SIN5_OVER_SINH5), None)
    assert exc.value.required_r0 == pytest.approx(math.pi * abs(math.sin(5.0)),
                                                  rel=1e-6)


def test_two_radii_rejects_large_value():
    with pytest.raises(UsageError):
        recover_two_radii(SPACE2, Observation(1.0, 1.5), None)


# --- full pipeline -----------------------------------------------------------

def test_recover_dispatches_large():
    res = recover(SPACE2, Observation(1.0, math.cosh(1.0)))
    assert abs(res.lam + 3.0) < 1e-9
    assert res.radii_used == 1


def test_recover_second_observation_ignored_when_unneeded():
    res = recover(SPACE2, Observation(1.0, math.cosh(1.0)),
                  obs2=Observation(2.0, 0.123))
    assert abs(res.lam + 3.0) < 1e-9
    assert res.radii_used == 1


def test_recover_zero_observation():
    with pytest.raises(ZeroObservationError):
        recover(SPACE2, Observation(1.0, 0.0))


def test_recover_rejects_both_second_sources():
    with pytest.raises(UsageError):
        recover(SPACE2, Observation(1.0, 0.5),
                obs2=Observation(2.0, 0.25), sampler=lambda r: 0.25)


def test_recover_with_explicit_second_observation():
    obs = Observation(5.0, SIN5_OVER_SINH5)
    obs2 = Observation(2.0, math.sin(2.0) / math.sinh(2.0))
    res = recover(SPACE2, obs, obs2=obs2)
    assert res.lam == pytest.approx(2.0, rel=1e-8)
    assert res.radii_used == 2
    assert res.residual < 1e-5


def test_recover_both_radii_outside_window():
    tiny = 1e-3
    with pytest.raises(RadiusTooLargeError):
        recover(SPACE2, Observation(8.0, tiny), obs2=Observation(7.0, tiny))


def test_recover_flags_inconsistent_pair():
    obs = Observation(1.0, 0.716023)
    obs2 = Observation(2.0, 0.9)
    with pytest.raises(InconsistentObservationError) as exc:
        recover(SPACE2, obs, obs2=obs2)
    assert exc.value.residual == pytest.approx(0.65, abs=0.05)


def test_recover_absorbs_rounded_inputs():
    # six-decimal quoting of the observation must not trip the consistency gate
    obs = Observation(5.0, round(SIN5_OVER_SINH5, 6))
    res = recover(SPACE2, obs, sampler=true_phi_sampler(2.0))
    assert res.lam == pytest.approx(2.0, abs=1e-5)
    assert res.radii_used == 2


@pytest.mark.parametrize("lam", (-3.0, 0.0, 1.0, 2.0))
def test_recover_branch_field_consistent(lam):
    value = phi(SPACE2, lam, 1.0)
    res = recover(SPACE2, Observation(1.0, value))
    assert res.branch is spectral_from_lambda(SPACE2, res.lam).kind
