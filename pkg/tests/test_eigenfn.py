"""Eigenfunction family: branches, identities, closed forms."""

import math

import numpy as np
import pytest

from hypereig.errors import DomainError, UsageError
from hypereig.eigenfn import (
    BranchKind,
    closed_form_k2,
    lambda_from_alpha,
    phi,
    phi_oscillatory,
    phi_oscillatory_psi_form,
    phi_real_alpha,
    separator_V,
    spectral_from_lambda,
    taylor_moment,
)
from hypereig.geometry import HyperbolicSpace
from hypereig.quadrature import QuadratureConfig

SPACE2 = HyperbolicSpace(rho=1.0, k=2)
TIGHT = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-13)


# --- spectral parametrization -------------------------------------------

def test_branch_assignment():
    p = spectral_from_lambda(SPACE2, 0.0)
    assert p.kind is BranchKind.REAL_ALPHA
    assert p.alpha == pytest.approx(2.0, rel=1e-15)

    p = spectral_from_lambda(SPACE2, 1.0)
    assert p.kind is BranchKind.CRITICAL
    assert p.alpha == 1.0

    p = spectral_from_lambda(SPACE2, 2.0)
    assert p.kind is BranchKind.OSCILLATORY
    assert p.b == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("k", (1, 2, 3))
@pytest.mark.parametrize("lam", (-7.0, -1.0, 0.0, 0.3, 1.0, 2.5, 40.0))
def test_branch_round_trip(k, lam):
    space = HyperbolicSpace(rho=1.3, k=k)
    p = spectral_from_lambda(space, lam)
    if p.kind is BranchKind.OSCILLATORY:
        back = lambda_from_alpha(space, b=p.b)
    else:
        back = lambda_from_alpha(space, alpha=p.alpha)
    assert back == pytest.approx(lam, rel=1e-12, abs=1e-12)


def test_lambda_from_alpha_values():
    assert lambda_from_alpha(SPACE2, alpha=0.0) == 0.0
    assert lambda_from_alpha(SPACE2, alpha=1.0) == pytest.approx(1.0, rel=1e-15)
    assert lambda_from_alpha(SPACE2, b=1.0) == pytest.approx(2.0, rel=1e-15)
    # the two real roots map to the same eigenvalue
    assert lambda_from_alpha(SPACE2, alpha=-1.0) == \
        pytest.approx(lambda_from_alpha(SPACE2, alpha=3.0), rel=1e-15)


def test_lambda_from_alpha_usage():
    with pytest.raises(UsageError):
        lambda_from_alpha(SPACE2)
    with pytest.raises(UsageError):
        lambda_from_alpha(SPACE2, alpha=2.0, b=1.0)
    with pytest.raises(DomainError):
        lambda_from_alpha(SPACE2, alpha=math.inf)


# --- real branch ---------------------------------------------------------

@pytest.mark.parametrize("k", (1, 2, 3))
@pytest.mark.parametrize("r", (0.0, 0.5, 3.0))
def test_power_zero_is_one(k, r):
    space = HyperbolicSpace(rho=1.0, k=k)
    assert phi_real_alpha(space, 0.0, r) == pytest.approx(1.0, abs=1e-12)


def test_value_at_origin_is_one_for_any_power():
    for alpha in (-3.0, 0.7, 12.0):
        assert phi_real_alpha(SPACE2, alpha, 0.0) == 1.0


def test_analytic_continuation_value():
    # alpha = 3 on k = 2 continues the closed form to sinh(2r)/(2 sinh r) = cosh(r)
    assert phi_real_alpha(SPACE2, 3.0, 1.0) == pytest.approx(math.cosh(1.0), rel=1e-12)


def test_two_root_identity_default_config():
    for alpha in (-1.5, -0.3, 0.4, 1.0):
        a = phi_real_alpha(SPACE2, alpha, 1.0)
        b = phi_real_alpha(SPACE2, 2.0 - alpha, 1.0)
        assert abs(a - b) < 1e-10


@pytest.mark.parametrize("k", (1, 2, 3, 5))
def test_two_root_identity_grid(k):
    space = HyperbolicSpace(rho=1.0, k=k)
    for alpha in np.linspace(-2.0, k / 2.0, 6):
        for r in (0.5, 1.0, 3.0):
            a = phi_real_alpha(space, float(alpha), r, TIGHT)
            b = phi_real_alpha(space, float(k - alpha), r, TIGHT)
            assert abs(a - b) < 1e-10


def test_huge_power_uses_log_path_and_grows():
    # alpha r well past the float exponent budget: finite here, infinite
    # a little further out, never an exception
    v = phi_real_alpha(SPACE2, 650.0, 1.0)
    assert math.isfinite(v) and v > 1e200
    assert phi_real_alpha(SPACE2, 1800.0, 1.0) == math.inf


def test_separator_matches_closed_form():
    # k = 2: V(r) = (r/rho)/sinh(r/rho)
    for r in (0.1, 1.0, 5.0, 10.0):
        assert separator_V(SPACE2, r) == pytest.approx(r / math.sinh(r), rel=1e-10)
    assert separator_V(SPACE2, 0.0) == 1.0


def test_separator_strictly_decreasing():
    grid = np.linspace(0.0, 10.0, 100)
    vals = [separator_V(SPACE2, float(r)) for r in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))


# --- oscillatory branch --------------------------------------------------

@pytest.mark.parametrize("b", (0.5, 1.0, 3.0))
def test_oscillatory_matches_closed_form(b):
    for r in np.linspace(0.1, 10.0, 23):
        got = phi_oscillatory(SPACE2, b, float(r))
        want = closed_form_k2(SPACE2, b, float(r))
        assert abs(got - want) < 1e-9


def test_oscillatory_zero_of_closed_form():
    assert abs(phi_oscillatory(SPACE2, 1.0, math.pi)) < 1e-12


@pytest.mark.parametrize("k", (1, 2, 3))
@pytest.mark.parametrize("b", (0.5, 1.0, 5.0))
@pytest.mark.parametrize("r", (0.5, 2.0))
def test_chart_forms_agree(k, b, r):
    space = HyperbolicSpace(rho=1.0, k=k)
    a = phi_oscillatory(space, b, r)
    c = phi_oscillatory_psi_form(space, b, r)
    assert abs(a - c) < 1e-11


@pytest.mark.parametrize("k", (1, 2, 3))
def test_small_rate_limit_is_separator(k):
    space = HyperbolicSpace(rho=1.0, k=k)
    r = 1.5
    assert phi_oscillatory(space, 1e-5, r) == \
        pytest.approx(separator_V(space, r), abs=1e-8)


def test_oscillatory_rejects_nonpositive_rate():
    with pytest.raises(DomainError):
        phi_oscillatory(SPACE2, 0.0, 1.0)
    with pytest.raises(DomainError):
        phi_oscillatory(SPACE2, -1.0, 1.0)


def test_closed_form_scale_invariance():
    # depends only on r/rho
    big = HyperbolicSpace(rho=2.0, k=2)
    assert closed_form_k2(big, 1.0, 2.0) == \
        pytest.approx(closed_form_k2(SPACE2, 1.0, 1.0), rel=1e-15)


def test_closed_form_guards():
    with pytest.raises(UsageError):
        closed_form_k2(HyperbolicSpace(rho=1.0, k=3), 1.0, 1.0)
    with pytest.raises(DomainError):
        closed_form_k2(SPACE2, -1.0, 1.0)
    assert closed_form_k2(SPACE2, 0.0, 2.0) == pytest.approx(2.0 / math.sinh(2.0),
                                                             rel=1e-15)


# --- dispatch and branch continuity -------------------------------------

def test_dispatch_matches_branch_evaluators():
    assert phi(SPACE2, 0.0, 5.0) == pytest.approx(1.0, abs=1e-11)
    assert phi(SPACE2, 2.0, 1.0) == pytest.approx(math.sin(1.0) / math.sinh(1.0),
                                                  rel=1e-10)
    assert phi(SPACE2, -3.0, 1.0) == pytest.approx(math.cosh(1.0), rel=1e-10)
    assert phi(SPACE2, 1.0, 1.0) == pytest.approx(separator_V(SPACE2, 1.0),
                                                  rel=1e-12)


@pytest.mark.parametrize("k", (1, 2, 3))
def test_continuity_across_branch_junction(k):
    space = HyperbolicSpace(rho=1.0, k=k)
    lam_c = space.lambda_critical
    r = 1.0
    v = separator_V(space, r)
    eps = 1e-9 * lam_c
    assert abs(phi(space, lam_c - eps, r) - v) < 1e-7
    assert abs(phi(space, lam_c + eps, r) - v) < 1e-7


@pytest.mark.parametrize("k", (1, 2))
def test_strict_decrease_in_eigenvalue(k):
    # monotone window: r <= pi*rho/p with p = 2 caps lambda at (k^2/4 + 4)/rho^2
    space = HyperbolicSpace(rho=1.0, k=k)
    r = 1.2
    lams = np.linspace(-4.0, space.lambda_critical + 4.0, 12)
    vals = [phi(space, float(lam), r, TIGHT) for lam in lams]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("k", (1, 2, 3))
def test_ordering_about_separator(k):
    space = HyperbolicSpace(rho=1.0, k=k)
    for r in (0.5, 1.0, 2.0):
        v = separator_V(space, r, TIGHT)
        for da in (0.05, 0.5, 2.0):
            assert phi_real_alpha(space, k / 2.0 + da, r, TIGHT) > v
        for b in (0.3, 1.0, 4.0):
            assert phi_oscillatory(space, b, r, TIGHT) < v


def test_convexity_in_power():
    h = 0.25
    for alpha in (-1.0, 0.0, 1.0, 2.5):
        lo = phi_real_alpha(SPACE2, alpha - h, 1.0, TIGHT)
        mid = phi_real_alpha(SPACE2, alpha, 1.0, TIGHT)
        hi = phi_real_alpha(SPACE2, alpha + h, 1.0, TIGHT)
        assert lo - 2.0 * mid + hi > 0.0


# --- moments -------------------------------------------------------------

def test_moment_zero_is_separator():
    for r in (0.5, 2.0):
        assert taylor_moment(SPACE2, 0, r) == pytest.approx(separator_V(SPACE2, r),
                                                            rel=1e-12)


def test_moments_vanish_at_origin():
    assert taylor_moment(SPACE2, 0, 0.0) == 1.0
    for m in (1, 2, 3):
        assert taylor_moment(SPACE2, m, 0.0) == 0.0


@pytest.mark.parametrize("k", (1, 2))
def test_moments_positive(k):
    space = HyperbolicSpace(rho=1.0, k=k)
    for m in range(5):
        assert taylor_moment(space, m, 1.0) > 0.0


@pytest.mark.parametrize("k", (1, 2))
def test_moment_series_reproduces_oscillatory(k):
    space = HyperbolicSpace(rho=1.0, k=k)
    b, r = 0.5, 1.0
    total = sum((-b * b) ** m / math.factorial(2 * m) * taylor_moment(space, m, r)
                for m in range(9))
    assert abs(total - phi_oscillatory(space, b, r)) < 1e-8


def test_moment_rejects_bad_order():
    with pytest.raises(DomainError):
        taylor_moment(SPACE2, -1, 1.0)
    with pytest.raises(DomainError):
        taylor_moment(SPACE2, 1.5, 1.0)
