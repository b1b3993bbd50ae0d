"""Quadrature, special functions and fitting primitives."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from artifact.numkernel import (
    DEFAULT_SETTINGS,
    AsymptoticFit,
    QuadratureError,
    QuadSettings,
    bose_kernel,
    bose_log,
    bose_occupation,
    derivative_fd,
    find_root_bracketed,
    fit_asymptotic,
    g,
    integrate_finite,
    integrate_semiinf,
)

ZETA3 = 1.2020569031595943
ZETA5 = 1.0369277551433699


def test_integrate_finite_sin():
    res = integrate_finite(math.sin, 0.0, math.pi, DEFAULT_SETTINGS)
    assert res.value == pytest.approx(2.0, rel=1e-12)
    assert res.error_estimate < 1e-9


def test_integrate_finite_kink_with_breakpoint():
    # int_0^1 |x - 1/3| dx = 5/18
    res = integrate_finite(lambda x: abs(x - 1.0 / 3.0), 0.0, 1.0,
                           DEFAULT_SETTINGS, breakpoints=[1.0 / 3.0])
    assert res.value == pytest.approx(5.0 / 18.0, rel=1e-13)


def test_integrate_finite_ignores_outside_breakpoints():
    res = integrate_finite(math.sin, 0.0, 1.0, DEFAULT_SETTINGS,
                           breakpoints=[-2.0, 0.0, 1.0, 5.0])
    assert res.value == pytest.approx(1.0 - math.cos(1.0), rel=1e-12)


def test_integrate_finite_rejects_divergent():
    with pytest.raises(QuadratureError):
        integrate_finite(lambda x: 1.0 / x, 0.0, 1.0, DEFAULT_SETTINGS)


def test_integrate_semiinf_exponential():
    res = integrate_semiinf(lambda x: x * math.exp(-x), 0.0,
                            DEFAULT_SETTINGS, scale=1.0)
    assert res.value == pytest.approx(1.0, rel=1e-11)


@pytest.mark.parametrize("weight, power, expected", [
    (bose_log, 0, -math.pi ** 2 / 6.0),
    (bose_log, 1, -ZETA3),
    (bose_log, 2, -math.pi ** 4 / 45.0),
    (bose_log, 3, -6.0 * ZETA5),
    (g, 0, math.pi ** 2 / 3.0),
    (g, 1, 3.0 * ZETA3),
    (g, 2, 4.0 * math.pi ** 4 / 45.0),
])
def test_standard_thermal_integrals(weight, power, expected):
    res = integrate_semiinf(lambda x: x ** power * weight(x), 0.0,
                            DEFAULT_SETTINGS, scale=1.0)
    assert res.value == pytest.approx(expected, rel=1e-10)


def test_special_values():
    assert bose_log(1.0) == pytest.approx(-0.45867514538708190, rel=1e-14)
    assert g(1.0) == pytest.approx(1.0406518522564083, rel=1e-12)
    assert g(1e-6) == pytest.approx(1.0 - math.log(1e-6), rel=1e-6)


def test_weight_domain_errors():
    for fn in (bose_log, g, bose_occupation, bose_kernel):
        with pytest.raises(ValueError):
            fn(0.0)
        with pytest.raises(ValueError):
            fn(-1.0)


@given(x=st.floats(min_value=1e-8, max_value=50.0),
       y=st.floats(min_value=1e-8, max_value=50.0))
@settings(max_examples=50, deadline=None)
def test_weight_signs_and_monotonicity(x, y):
    assert bose_log(x) < 0.0
    assert g(x) > 0.0
    lo, hi = min(x, y), max(x, y)
    assert bose_log(lo) <= bose_log(hi)
    assert g(lo) >= g(hi)


@given(x=st.floats(min_value=1e-6, max_value=30.0))
@settings(max_examples=50, deadline=None)
def test_g_decomposition(x):
    # g = x n(x) - blog(x) with n the occupation
    assert g(x) == pytest.approx(x * bose_occupation(x) - bose_log(x),
                                 rel=1e-12)


def test_find_root_bracketed():
    root = find_root_bracketed(math.cos, 0.0, 2.0, x_tol=1e-13)
    assert root == pytest.approx(math.pi / 2.0, abs=1e-12)


def test_find_root_requires_sign_change():
    with pytest.raises(QuadratureError):
        find_root_bracketed(math.exp, 0.0, 1.0)


@given(c=st.floats(min_value=-3.0, max_value=3.0))
@settings(max_examples=25, deadline=None)
def test_find_root_affine(c):
    root = find_root_bracketed(lambda x: x - c, -4.0, 4.0, x_tol=1e-13)
    assert root == pytest.approx(c, abs=1e-12)


def _poly_samples(coeffs, n=12):
    ts = [100.0 * (10.0 ** (i / (n - 1))) for i in range(n)]
    c3, c2, cl, c1 = coeffs
    return [(t, c3 * t ** 3 + c2 * t ** 2 + cl * t * math.log(t) + c1 * t)
            for t in ts]


def test_fit_asymptotic_exact_recovery():
    fit = fit_asymptotic(_poly_samples((2.0, -0.5, 0.3, -0.1)),
                         basis=("T3", "T2", "TlogT", "T"))
    assert isinstance(fit, AsymptoticFit)
    assert fit.coefficient("T3") == pytest.approx(2.0, rel=1e-10)
    assert fit.coefficient("T2") == pytest.approx(-0.5, rel=1e-9)
    assert fit.coefficient("TlogT") == pytest.approx(0.3, rel=1e-8)
    assert fit.coefficient("T") == pytest.approx(-0.1, rel=1e-7)


@given(c3=st.floats(min_value=-2.0, max_value=2.0),
       c2=st.floats(min_value=-2.0, max_value=2.0))
@settings(max_examples=25, deadline=None)
def test_fit_asymptotic_two_term(c3, c2):
    samples = [(t, c3 * t ** 3 + c2 * t ** 2)
               for t in (100.0, 160.0, 250.0, 400.0, 630.0, 1000.0)]
    fit = fit_asymptotic(samples, basis=("T3", "T2"))
    assert fit.coefficient("T3") == pytest.approx(c3, abs=1e-10 + 1e-9 * abs(c3))
    assert fit.coefficient("T2") == pytest.approx(c2, abs=1e-7 + 1e-9 * abs(c2))


def test_fit_asymptotic_rejects_unknown_basis():
    with pytest.raises(ValueError):
        fit_asymptotic(_poly_samples((1.0, 0.0, 0.0, 0.0)), basis=("T4",))


def test_fit_asymptotic_needs_enough_samples():
    with pytest.raises(ValueError):
        fit_asymptotic([(1.0, 1.0), (2.0, 8.0)], basis=("T3", "T2"))


def test_derivative_fd():
    d = derivative_fd(math.sin, 0.7, 1e-5)
    assert d == pytest.approx(math.cos(0.7), abs=1e-9)


def test_quad_settings_tols():
    s = QuadSettings()
    s2 = s.with_tols(rel_tol=1e-6)
    assert s2.rel_tol == 1e-6
    assert s2.abs_tol == s.abs_tol
    assert s.tolerance(10.0) >= 10.0 * s.rel_tol


def test_error_tracker_records_worst():
    from artifact.numkernel import ErrorTracker

    s = QuadSettings(error_tracker=ErrorTracker())
    assert s.error_tracker.worst == 0.0
    integrate_finite(math.sin, 0.0, 1.0, s)
    integrate_finite(math.cos, 0.0, 2.0, s)
    assert s.error_tracker.worst > 0.0
    before = s.error_tracker.worst
    # a trivially small integral cannot raise the recorded worst error
    integrate_finite(lambda x: x, 0.0, 1e-8, s)
    assert s.error_tracker.worst == before
    s.error_tracker.reset()
    assert s.error_tracker.worst == 0.0
