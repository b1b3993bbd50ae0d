"""Thin plasma sheet: phase shifts, spectral densities, thermodynamics."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from artifact import plasma_sheet as ps
from artifact.numkernel import DEFAULT_SETTINGS
from artifact.spectral import Channel

ZETA3 = 1.2020569031595943

P05 = ps.SheetParams(Omega0=1.0, omega0=0.5)
P13 = ps.SheetParams(Omega0=1.0, omega0=1.3)
P00 = ps.SheetParams(Omega0=1.0, omega0=0.0)

# frozen against an independent quadrature of the epsilon representation
H_TE_05 = {
    0.1: -7.332987571151,
    0.3: -4.471426574955e-2,
    0.7: +0.7898456824562,
    1.0: +0.7697220168901,
    2.0: +0.5554791458900,
    5.0: +0.2748818972684,
}
H_TE_13 = {
    0.1: -14.02359807189,
    0.3: -3.640828407871,
    0.7: -0.5700887737887,
    1.0: +0.2810385386761,
    2.0: +0.5919185122186,
    5.0: +0.2763061773346,
}
H_TM_05 = {
    0.1: +4.0529138224,
    0.3: +4.4499017346,
    0.45: +4.9475451872,
    0.49: +5.1018228832,
    0.499: +5.1375949387,
    0.501: -1.1376029136,
    0.51: -1.1025982206,
    0.55: -0.9646750598,
    0.7: -0.6227692550,
    1.0: -0.3182380450,
    2.0: -0.0823186366,
    5.0: -1.3306780321e-2,
}


@pytest.mark.parametrize("table, params", [
    (H_TE_05, P05), (H_TE_13, P13),
])
def test_h_te_frozen_values(table, params):
    for omega, expected in table.items():
        assert ps.h(Channel.TE, omega, params) == pytest.approx(
            expected, rel=1e-9), f"h_TE({omega})"


def test_h_tm_frozen_values():
    for omega, expected in H_TM_05.items():
        assert ps.h(Channel.TM, omega, P05) == pytest.approx(
            expected, rel=1e-9), f"h_TM({omega})"


def test_h_closed_points():
    assert ps.h(Channel.TE, 1.0, P00) == pytest.approx(math.pi / 4.0,
                                                       rel=1e-12)
    assert ps.h(Channel.TM, 1.0, P00) == pytest.approx(
        2.0 - 3.0 * math.pi / 4.0, rel=1e-12)


def test_h_te_continuous_at_resonance():
    # the TE density crosses the shell smoothly with value 2/(3 Omega0)
    lim = 2.0 / 3.0
    below = ps.h(Channel.TE, 0.5 - 1e-7, P05)
    above = ps.h(Channel.TE, 0.5 + 1e-7, P05)
    assert below == pytest.approx(lim, abs=1e-5)
    assert above == pytest.approx(lim, abs=1e-5)


def test_h_tm_jump_at_resonance():
    # the TM density jumps by -pi/omega0 across the shell
    w0 = 0.5
    eps = 1e-9
    jump = ps.h(Channel.TM, w0 + eps, P05) - ps.h(Channel.TM, w0 - eps, P05)
    assert jump == pytest.approx(-math.pi / w0, rel=1e-6)


def test_pole_raises():
    with pytest.raises(ValueError):
        ps.Omega_of_omega(0.5, P05)
    with pytest.raises(ValueError):
        ps.phase_shift(Channel.TE, 0.3, 0.4, P05)
    with pytest.raises(ValueError):
        ps.phase_shift_deriv(Channel.TM, 0.3, 0.4, P05)
    with pytest.raises(ValueError):
        ps.phase_shift(Channel.TE, -0.1, 0.4, P05)
    with pytest.raises(ValueError):
        ps.phase_shift(Channel.TM, 0.0, 0.0, P05)


def test_h_subtr_removes_rational_tail():
    # h - h_subtr is the full subtraction density: pi/(2 omega)
    # - Omega0/omega^2 (TE) and -Omega0/(3 omega^2) (TM), whose thermal
    # integrals are exactly c3 T^3 + c2 T^2
    for omega in (0.3, 0.9, 5.0):
        te_tail = math.pi / (2.0 * omega) - 1.0 / omega ** 2
        tm_tail = -1.0 / (3.0 * omega ** 2)
        assert ps.h(Channel.TE, omega, P05) - ps.h_subtr(
            Channel.TE, omega, P05) == pytest.approx(te_tail, rel=1e-10)
        assert ps.h(Channel.TM, omega, P05) - ps.h_subtr(
            Channel.TM, omega, P05) == pytest.approx(tm_tail, rel=1e-10)
    for ch in (Channel.TE, Channel.TM):
        assert abs(ps.h_subtr(ch, 500.0, P05)) < 1e-5
    # the omega -> 0 weight omega^2 h_subtr -> Omega0 (TE), Omega0/3
    # (TM) is what produces the linear low-T entropy slopes
    w = 1e-6
    assert w * w * ps.h_subtr(Channel.TE, w, P05) == pytest.approx(
        1.0, rel=1e-4)
    assert w * w * ps.h_subtr(Channel.TM, w, P05) == pytest.approx(
        1.0 / 3.0, rel=1e-6)


def test_shell_weight():
    assert ps.shell_weight(Channel.TM, P05) == pytest.approx(
        -0.5 * math.pi * 0.25, rel=1e-15)
    assert ps.shell_weight(Channel.TE, P00) == 0.0


def test_subtraction_coefficients():
    te = ps.subtraction_spec(Channel.TE, P05)
    tm = ps.subtraction_spec(Channel.TM, P05)
    assert te.c3 == pytest.approx(-ZETA3 / (4.0 * math.pi), rel=1e-15)
    assert te.c2 == pytest.approx(1.0 / 12.0, rel=1e-15)
    assert tm.c3 == 0.0
    assert tm.c2 == pytest.approx(1.0 / 36.0, rel=1e-15)


@pytest.mark.parametrize("params", [P00, P05, P13])
def test_te_sum_rule_closed_form(params):
    # with the shell: pi (Omega0^2/4 - omega0^2/2); continuum alone:
    # pi Omega0^2/4
    w0 = params.omega0
    full = ps.spectral_sum_rule(Channel.TE, params)
    cont = ps.spectral_sum_rule(Channel.TE, params, include_shell=False)
    assert cont == pytest.approx(math.pi / 4.0, abs=1e-9)
    assert full == pytest.approx(math.pi * (0.25 - 0.5 * w0 * w0), abs=1e-9)


def test_tm_sum_rule_vanishes_with_shell():
    assert abs(ps.spectral_sum_rule(Channel.TM, P05)) < 1e-9
    cont = ps.spectral_sum_rule(Channel.TM, P05, include_shell=False)
    assert cont == pytest.approx(0.5 * math.pi * 0.25, abs=1e-9)


def test_raw_minus_subtracted_is_polynomial():
    T = 0.8
    for ch in (Channel.TE, Channel.TM):
        spec = ps.subtraction_spec(ch, P05)
        raw = ps.free_energy_channel_raw(ch, T, P05)
        sub = ps.free_energy_channel(ch, T, P05)
        assert raw - sub == pytest.approx(spec.c3 * T ** 3 + spec.c2 * T ** 2,
                                          rel=1e-10)


def test_omega_sf_band_edge_and_monotonicity():
    assert ps.omega_sf(0.5, P05) == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(ValueError):
        ps.omega_sf(0.49, P05)
    ws = [ps.omega_sf(k, P05) for k in (0.5, 1.0, 2.0, 4.0, 8.0)]
    assert all(a < b for a, b in zip(ws, ws[1:]))
    # below the light line everywhere
    for k, w in zip((0.5, 1.0, 2.0, 4.0, 8.0), ws):
        assert w <= k


@given(w0=st.floats(min_value=0.0, max_value=2.0),
       dk=st.floats(min_value=1e-3, max_value=100.0))
@settings(max_examples=50, deadline=None)
def test_omega_sf_solves_mode_equation(w0, dk):
    params = ps.SheetParams(Omega0=1.0, omega0=w0)
    assert ps.plasmon_mode_residual(w0 + dk, params) < 1e-10 * (1.0 + dk) ** 2


def test_plasmon_raw_identity():
    # raw = c3 T^3 + c5 T^5 + subtracted remainder, exactly
    params = ps.SheetParams(Omega0=1.0, omega0=1.0)
    c3, c5 = ps.plasmon_raw_coefficients(params)
    for T in (0.3, 1.0, 4.0):
        raw = ps.plasmon_free_energy_raw(T, params)
        sub = ps.plasmon_free_energy_subtr(T, params)
        assert raw == pytest.approx(c3 * T ** 3 + c5 * T ** 5 + sub,
                                    rel=1e-8)


def test_plasmon_subtr_vanishes_below_threshold():
    # band bottom at sqrt(omega0^2 - Omega0^2/2) requires
    # omega0 > Omega0/sqrt(2)
    assert ps.plasmon_free_energy_subtr(1.0, P05) == 0.0
    assert ps.plasmon_entropy_subtr(1.0, P05) == 0.0
    params = ps.SheetParams(Omega0=1.0, omega0=1.0)
    assert ps.plasmon_free_energy_subtr(1.0, params) != 0.0


def test_total_breakdown_sums():
    params = ps.SheetParams(Omega0=1.0, omega0=0.8)
    bd = ps.total(1.3, params)
    assert bd.F_total == pytest.approx(bd.F_TE + bd.F_TM + bd.F_sf,
                                       rel=1e-15)
    assert bd.S_total == pytest.approx(bd.S_TE + bd.S_TM + bd.S_sf,
                                       rel=1e-15)
    assert bd.F_TE == pytest.approx(
        ps.free_energy_channel(Channel.TE, 1.3, params), rel=1e-12)
    assert bd.F_sf == pytest.approx(
        ps.plasmon_free_energy_subtr(1.3, params), rel=1e-12)


@pytest.mark.parametrize("w0", [0.0, 0.8, 1.3])
def test_high_T_log_coefficient_matches_closed_form(w0):
    params = ps.SheetParams(Omega0=1.0, omega0=w0)
    assert ps.high_T_log_coefficient(params) == pytest.approx(
        ps.high_T_log_coefficient_closed(params), abs=1e-9)


def test_heat_kernel_closed_coefficients():
    hk = ps.heat_kernel_coeffs(P05)
    assert hk.a_half[Channel.TE] == pytest.approx(math.sqrt(math.pi),
                                                  rel=1e-14)
    assert hk.a_one[Channel.TE] == pytest.approx(-2.0, rel=1e-14)
    assert hk.a_half[Channel.TM] == pytest.approx(
        2.0 * math.sqrt(math.pi) * (1.0 - 2.0 * 0.25), rel=1e-14)
    assert hk.a_one[Channel.TM] == pytest.approx(-2.0 / 3.0, rel=1e-14)
    # x = omega0^2 - Omega0^2/2 < 0 here: no T log T weight
    assert hk.a_three_half[Channel.TM] == 0.0
    x = 1.3 ** 2 - 0.5
    assert ps.heat_kernel_coeffs(P13).a_three_half[Channel.TM] == (
        pytest.approx(2.0 * math.sqrt(math.pi) * x * x, rel=1e-14))


@given(lam=st.floats(min_value=0.5, max_value=2.0))
@settings(max_examples=8, deadline=None)
def test_entropy_scale_covariance(lam):
    # S is a (length)^-2 density: S(lam T; lam Omega0, lam omega0)
    # = lam^2 S(T; Omega0, omega0)
    base = ps.SheetParams(Omega0=1.0, omega0=0.6)
    scaled = ps.SheetParams(Omega0=lam, omega0=0.6 * lam)
    s1 = ps.entropy_channel(Channel.TE, 0.9 * lam, scaled)
    s0 = ps.entropy_channel(Channel.TE, 0.9, base)
    assert s1 == pytest.approx(lam * lam * s0, rel=1e-7)


def test_invalid_temperature_rejected():
    with pytest.raises(ValueError):
        ps.free_energy_channel(Channel.TE, 0.0, P05)
    with pytest.raises(ValueError):
        ps.entropy_channel(Channel.TM, -1.0, P05)
