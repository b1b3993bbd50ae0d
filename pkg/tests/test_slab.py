"""Dielectric slab: transmission, phase shifts, thermodynamic parts,
guided mode."""

import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from artifact import slab
from artifact.numkernel import DEFAULT_SETTINGS
from artifact.spectral import Channel

P1 = slab.SlabParams(omega_p=1.0, L=1.0)

# frozen against the defining transmission-phase integrals
H_BELOW = {
    1e-4: -4.710346912292e-4,
    0.01: -4.600276531676e-2,
    0.05: -0.2156042520557,
    0.3: -0.9963327568713,
    0.69: -1.622942061351,
    0.70711: -1.635657296474,
    0.71: -1.637671474767,
    0.9: -1.672506226423,
}
H_ABOVE = {
    1.2: -1.076354637549,
    2.0: -0.614546626009,
    5.0: -0.456304453265,
    50.0: -0.429470382546,
}


def test_h_frozen_values():
    for omega, expected in {**H_BELOW, **H_ABOVE}.items():
        assert slab.h(omega, P1) == pytest.approx(expected, rel=1e-9), \
            f"h({omega})"


def test_h_special_points():
    assert slab.h(1.0, P1) == pytest.approx(-math.pi / 2.0, abs=1e-12)
    # large-omega limit (pi - 4)/2 * omega_p
    assert slab.h(2000.0, P1) == pytest.approx((math.pi - 4.0) / 2.0,
                                               rel=1e-5)


def test_epsilon():
    assert slab.epsilon(1.0, P1) == 0.0
    assert slab.epsilon(1.0 / math.sqrt(2.0), P1) == pytest.approx(-1.0,
                                                                   rel=1e-12)
    wp2 = slab.SlabParams(omega_p=2.0, L=1.0)
    assert slab.epsilon(2.0, wp2) == 0.0


@given(p=st.floats(min_value=0.05, max_value=20.0),
       k=st.floats(min_value=0.0, max_value=3.0))
@settings(max_examples=50, deadline=None)
def test_transmission_factorization(p, k):
    assume(abs(p - P1.omega_p) > 1e-6)
    for ch in (Channel.TE, Channel.TM):
        t = slab.transmission(ch, p, k, P1)
        assert t.factorization_residual < 1e-12
        if p > P1.omega_p:
            assert abs(t.value) <= 1.0 + 1e-12


def test_transmission_raises_at_internal_resonance():
    with pytest.raises(ValueError):
        slab.transmission(Channel.TE, 1.0, 0.0, P1)


def test_surface_phase_domain():
    # the TM surface phase extends below the light line
    val = slab.delta_s(Channel.TM, 0.5, 0.3, P1)
    assert math.isfinite(val)
    with pytest.raises(ValueError):
        slab.delta_L(Channel.TM, 0.5, 0.3, P1)


def test_delta_L_vanishes_at_small_p():
    # like 4 p / (omega_p (e^{2 omega_p L} - 1)) in TE
    p = 1e-4
    expected = 4.0 * p / (1.0 * (math.exp(2.0) - 1.0))
    assert slab.delta_L(Channel.TE, p, 2.0, P1) == pytest.approx(
        expected, rel=1e-3)


def test_delta_L_decays_with_thickness():
    thick = slab.SlabParams(omega_p=1.0, L=60.0)
    assert abs(slab.delta_L(Channel.TE, 0.5, 2.0, thick)) < 1e-12


def test_exp_part_scales_linearly_in_L():
    a = slab.S_exp_subtr(3.0, slab.SlabParams(omega_p=1.0, L=1.0))
    b = slab.S_exp_subtr(3.0, slab.SlabParams(omega_p=1.0, L=2.0))
    assert b == pytest.approx(2.0 * a, rel=1e-10)


def test_F_exp_offset_identity():
    T = 0.7
    assert slab.F_exp(T, P1) == pytest.approx(
        slab.F_exp_subtr(T, P1) + T * T / 24.0, rel=1e-12)


def test_validators_pass():
    slab.validate_surface_weight(P1)
    slab.validate_exp_part(P1)


def test_slab_constant_c():
    assert slab.slab_constant_c() == pytest.approx(math.pi / 2.0, abs=1e-6)


def test_slab_constant_d_routes_agree():
    d_te = slab.slab_constant_d(route="TE")
    d_tm = slab.slab_constant_d(route="TM")
    assert d_te == pytest.approx(-5.9362652e-4, rel=1e-4)
    assert d_tm == pytest.approx(d_te, rel=1e-3)


def test_S_L_plateau():
    assert slab.S_L(Channel.TE, 200.0, P1) == pytest.approx(
        5.936265e-4, rel=1e-3)


def test_subtraction_specs():
    zeta3 = 1.2020569031595943
    s_te = slab.subtraction_spec("s_TE", P1)
    s_tm = slab.subtraction_spec("s_TM", P1)
    exp = slab.subtraction_spec("exp", P1)
    assert s_te.c3 == pytest.approx(-zeta3 / (2.0 * math.pi), rel=1e-15)
    assert s_te.c2 == 0.0
    assert s_tm.c3 == s_te.c3
    assert s_tm.c2 == pytest.approx((4.0 - math.pi) / 24.0, rel=1e-15)
    assert slab.subtraction_spec("L_TE", P1) == slab.subtraction_spec(
        "L_TM", P1)
    assert exp.c2 == pytest.approx(1.0 / 24.0, rel=1e-15)
    with pytest.raises(ValueError):
        slab.subtraction_spec("bulk", P1)


def test_single_surface_mode():
    k = 1.0 / math.sqrt(2.0)
    w = slab.single_surface_mode(k, P1)
    assert w == pytest.approx(math.sqrt(1.0 - k), rel=1e-12)
    assert slab.single_surface_mode(50.0, P1) == pytest.approx(
        1.0 / math.sqrt(2.0), rel=1e-4)


def test_plasmon_dispersion_frozen_root():
    p2 = slab.SlabParams(omega_p=1.0, L=2.0)
    w = slab.plasmon_dispersion(1.0, p2)
    assert w == pytest.approx(0.591564242, abs=1e-8)
    assert slab.plasmon_mode_residual(w, 1.0, p2) < 1e-10


def test_plasmon_dispersion_near_light_line():
    # at small k L the mode pair hugs the light line; the root must
    # still be found and stay below it
    w = slab.plasmon_dispersion(0.05, P1)
    assert w == pytest.approx(0.049711771210, abs=1e-9)
    assert w < 0.05
    assert slab.plasmon_mode_residual(w, 0.05, P1) < 1e-9


@given(k=st.floats(min_value=0.05, max_value=30.0))
@settings(max_examples=30, deadline=None)
def test_plasmon_bound(k):
    w = slab.plasmon_dispersion(k, P1)
    assert w <= 1.0 / math.sqrt(2.0)
    assert w < k


def test_plasmon_large_L_merges_to_single_surface():
    thick = slab.SlabParams(omega_p=1.0, L=50.0)
    for k in (0.3, 1.0, 5.0):
        assert slab.plasmon_dispersion(k, thick) == pytest.approx(
            slab.single_surface_mode(k, thick), abs=1e-6)


def test_total_breakdown_sums():
    bd = slab.total(1.0, P1)
    total_F = (bd.F_s_TE + bd.F_s_TM + bd.F_L_TE + bd.F_L_TM + bd.F_exp)
    assert bd.F_total == pytest.approx(total_F, rel=1e-15)
    assert bd.F_s_TE == pytest.approx(slab.F_s_TE_subtr(1.0, P1), rel=1e-10)
    assert bd.F_L_TE == pytest.approx(slab.F_L_TE(1.0, P1), rel=1e-10)
    assert bd.F_exp == pytest.approx(slab.F_exp_subtr(1.0, P1), rel=1e-10)
    names = [p.name for p in bd.point.parts]
    assert names == ["s_TE", "s_TM", "L_TE", "L_TM", "exp"]


def test_invalid_temperature_rejected():
    with pytest.raises(ValueError):
        slab.F_s_TE(0.0, P1)
    with pytest.raises(ValueError):
        slab.F_exp(-2.0, P1)
