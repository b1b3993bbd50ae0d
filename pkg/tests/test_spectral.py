"""Channel-level representation: defining integrals, subtractions,
heat-kernel dictionary."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from artifact import plasma_sheet, spectral
from artifact.numkernel import DEFAULT_SETTINGS, derivative_fd
from artifact.spectral import (
    Channel,
    ScatteringChannel,
    SubtractionSpec,
    expansion_from_heat_kernel,
    extract_heat_kernel,
    heat_kernel_from_expansion,
    subtract,
    validate_channel_derivative,
)


def test_channel_names():
    assert Channel.TE == "TE"
    assert Channel.TM == "TM"
    Channel.validate("TE")
    with pytest.raises(ValueError):
        Channel.validate("TEM")


@given(c3=st.floats(min_value=-1.0, max_value=1.0),
       c2=st.floats(min_value=-1.0, max_value=1.0),
       T=st.floats(min_value=0.1, max_value=100.0))
@settings(max_examples=40, deadline=None)
def test_subtraction_is_affine_in_raw(c3, c2, T):
    spec = SubtractionSpec(c3=c3, c2=c2)
    raw = 0.37
    assert subtract(raw, spec, T) == pytest.approx(
        raw - c3 * T ** 3 - c2 * T ** 2, rel=1e-12, abs=1e-12)
    # removing the subtraction from a raw entropy adds the -dF/dT terms
    assert subtract(raw, spec, T, entropy=True) == pytest.approx(
        raw + 3.0 * c3 * T ** 2 + 2.0 * c2 * T, rel=1e-12, abs=1e-12)


def test_subtraction_preserves_thermodynamic_identity():
    # if the raw pair satisfies S = -dF/dT, so must the subtracted pair
    spec = SubtractionSpec(c3=0.7, c2=-0.2)

    def F_raw(T):
        return 0.4 * T ** 4 + spec.c3 * T ** 3 + spec.c2 * T ** 2

    def S_raw(T):
        return -(1.6 * T ** 3 + 3.0 * spec.c3 * T ** 2 + 2.0 * spec.c2 * T)

    for T in (0.5, 2.0, 20.0):
        F_sub = spec.free_energy(F_raw(T), T)
        S_sub = spec.entropy(S_raw(T), T)
        slope = derivative_fd(lambda t: spec.free_energy(F_raw(t), t),
                              T, 1e-6 * T)
        assert S_sub == pytest.approx(-slope, rel=1e-6)
        assert F_sub == pytest.approx(0.4 * T ** 4, rel=1e-12)


@given(a_half=st.floats(min_value=-4.0, max_value=4.0),
       a_one=st.floats(min_value=-4.0, max_value=4.0),
       a_three_half=st.floats(min_value=-4.0, max_value=4.0))
@settings(max_examples=40, deadline=None)
def test_heat_kernel_dictionary_round_trip(a_half, a_one, a_three_half):
    c3, c2, c_log = expansion_from_heat_kernel(a_half, a_one, a_three_half)
    back = heat_kernel_from_expansion(c3, c2, c_log)
    assert back[0] == pytest.approx(a_half, rel=1e-12, abs=1e-12)
    assert back[1] == pytest.approx(a_one, rel=1e-12, abs=1e-12)
    assert back[2] == pytest.approx(a_three_half, rel=1e-12, abs=1e-12)


def test_extract_heat_kernel_recovers_synthetic_coefficients():
    a = {"TE": (1.5, -2.0, 0.0), "TM": (3.0, -0.5, 0.8)}
    samples = {}
    for ch, (ah, a1, a32) in a.items():
        c3, c2, cl = expansion_from_heat_kernel(ah, a1, a32)
        ts = [100.0 * 10.0 ** (i / 11.0) for i in range(12)]
        samples[ch] = [
            (t, c3 * t ** 3 + c2 * t ** 2 + cl * t * math.log(t) + 0.03 * t)
            for t in ts
        ]
    hk = extract_heat_kernel(samples)
    for ch, (ah, a1, a32) in a.items():
        assert hk.a_half[ch] == pytest.approx(ah, rel=1e-8)
        assert hk.a_one[ch] == pytest.approx(a1, rel=1e-7)
        assert hk.a_three_half[ch] == pytest.approx(a32, rel=1e-6, abs=1e-8)
        assert hk.fit_residuals[ch] < 1e-9


def _atan_channel():
    return ScatteringChannel(
        name="atan",
        phase_shift=lambda p, k: math.atan(p) - 0.3 * math.atan(k * p),
        phase_shift_deriv=None,
        fd_scale=1.0,
    )


def test_channel_fd_derivative_fallback():
    ch = _atan_channel()
    p, k = 0.8, 0.4
    exact = 1.0 / (1.0 + p * p) - 0.3 * k / (1.0 + (k * p) ** 2)
    assert ch.deriv(p, k) == pytest.approx(exact, rel=1e-7)


def test_validate_channel_derivative_sheet():
    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.6)
    pts = [(0.3, 0.5), (1.2, 2.0), (0.05, 0.9), (4.0, 0.1)]
    for name in (Channel.TE, Channel.TM):
        ch = plasma_sheet.scattering_channel(name, params)
        worst = validate_channel_derivative(ch, pts)
        assert worst < 1e-5


def test_validate_channel_derivative_catches_wrong_derivative():
    ch = ScatteringChannel(
        name="broken",
        phase_shift=lambda p, k: math.atan(p),
        phase_shift_deriv=lambda p, k: 2.0 / (1.0 + p * p),
        fd_scale=1.0,
    )
    with pytest.raises(AssertionError):
        validate_channel_derivative(ch, [(0.5, 0.5)])


def test_free_energy_defining_matches_sheet_te():
    # TE channel of the sheet at T = 1: the (p, k) double integral must
    # land on the closed-form radial reduction (continuum only; the TE
    # shell weight vanishes at omega0 = 0 anyway).
    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.0)
    ch = plasma_sheet.scattering_channel(Channel.TE, params)
    F_def = spectral.free_energy_defining(ch, 1.0, DEFAULT_SETTINGS)
    F_closed = plasma_sheet.free_energy_channel_raw(
        Channel.TE, 1.0, params, include_shell=False)
    assert F_def == pytest.approx(F_closed, rel=1e-6)


def test_entropy_defining_is_minus_dF_dT():
    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.0)
    ch = plasma_sheet.scattering_channel(Channel.TE, params)
    S = spectral.entropy_defining(ch, 1.0, DEFAULT_SETTINGS)
    slope = derivative_fd(
        lambda T: spectral.free_energy_defining(ch, T, DEFAULT_SETTINGS),
        1.0, 1e-4)
    assert S == pytest.approx(-slope, rel=1e-5)


def test_thermo_point_parts():
    bd = plasma_sheet.total(1.0, plasma_sheet.SheetParams(Omega0=1.0,
                                                          omega0=0.8))
    point = bd.point
    assert point.T == 1.0
    names = [p.name for p in point.parts]
    assert names == ["TE", "TM", "sf"]
    te = point.part("TE")
    assert te.free_energy_subtr == bd.F_TE
    with pytest.raises(KeyError):
        point.part("nope")
