"""Acceptance checks shared by the command line ``verify`` command and pytest.

Each check compares a measured number against an expected value (or bound)
at a stated tolerance and yields a :class:`CheckResult` record.  Checks are
grouped into suites:

``oracle``
    Closed-form scattering quantities against their defining integral
    representations, transmission factorization, and plasmon dispersions.
``asymptotics``
    Low- and high-temperature laws: Nernst slopes, fitted T^3/T^2
    coefficients, heat-kernel coefficients, slab low-T laws, slab high-T
    entropy plateaus.
``constants``
    Spectral sum rules, the negative-entropy window of the sheet, and the
    slab constants c and d.
``thermo-identity``
    S == -dF/dT by central finite differences for every model part.
``nernst``
    Subtracted entropies of every part vanish as T -> 0.

Two asymptotics checks probe a convergence limit at a temperature where the
subleading T*log(1/T) corrections of the slab surface part are still large;
they fail by design and document the measured convergence trend (see the
surface_tm_low_T checks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import plasma_sheet, slab, spectral
from .numkernel import (
    DEFAULT_SETTINGS,
    QuadSettings,
    bose_log,
    fit_asymptotic,
    integrate_finite,
    integrate_semiinf,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "run_all", "summarize"]

SUITES = ("oracle", "asymptotics", "constants", "thermo-identity", "nernst")

_ZETA3 = spectral.ZETA3


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single acceptance check.

    Attributes
    ----------
    suite : str
        Suite the check belongs to, one of :data:`SUITES`.
    check : str
        Human-readable check identifier, unique within the suite.
    expected : float or str
        Target value, or a textual bound such as ``"< 0"``.
    measured : float
        The computed quantity.
    tolerance : float
        Tolerance used by the pass criterion (relative or absolute,
        according to the check; bounds use 0.0).
    passed : bool
        Whether the check met its criterion.
    """

    suite: str
    check: str
    expected: float | str
    measured: float
    tolerance: float
    passed: bool


def _rel(suite, name, expected, measured, tol):
    ok = math.isfinite(measured) and abs(measured - expected) <= tol * abs(expected)
    return CheckResult(suite, name, expected, measured, tol, ok)


def _abs(suite, name, expected, measured, tol):
    ok = math.isfinite(measured) and abs(measured - expected) <= tol
    return CheckResult(suite, name, expected, measured, tol, ok)


def _below(suite, name, measured, bound, label=None):
    ok = math.isfinite(measured) and measured <= bound
    return CheckResult(suite, name, label or f"<= {bound:g}", measured, bound, ok)


def _negative(suite, name, measured):
    ok = math.isfinite(measured) and measured < 0.0
    return CheckResult(suite, name, "< 0", measured, 0.0, ok)


def _nonnegative(suite, name, measured):
    ok = math.isfinite(measured) and measured >= 0.0
    return CheckResult(suite, name, ">= 0", measured, 0.0, ok)


# ---------------------------------------------------------------------------
# oracle suite
# ---------------------------------------------------------------------------

def _sheet_h_epsilon_quad(ch, omega, params, settings):
    """h(omega) from the defining epsilon-integral of the phase derivative."""

    def integrand(eps):
        p = eps * omega
        k = omega * math.sqrt(max(0.0, 1.0 - eps * eps))
        return plasma_sheet.phase_shift_deriv(ch, p, k, params)

    return integrate_finite(integrand, 0.0, 1.0, settings).value


def _sheet_h_oracle_checks(settings):
    out = []
    grid = np.geomspace(1e-2, 50.0, 24)
    for omega0 in (0.0, 0.5, 1.3):
        params = plasma_sheet.SheetParams(Omega0=1.0, omega0=omega0)
        for ch in ("TE", "TM"):
            worst = 0.0
            for omega in grid:
                if omega0 > 0.0 and abs(omega - omega0) < 1e-3:
                    continue
                closed = plasma_sheet.h(ch, omega, params)
                quad = _sheet_h_epsilon_quad(ch, omega, params, settings)
                dev = abs(closed - quad) / max(1.0, abs(quad))
                worst = max(worst, dev)
            out.append(_below(
                "oracle",
                f"sheet h_{ch} closed vs epsilon-integral, omega0={omega0}",
                worst, 1e-8, label="<= 1e-08"))
    return out


def _sheet_defining_checks(settings):
    out = []
    T = 1.0
    for omega0 in (0.0, 0.5):
        params = plasma_sheet.SheetParams(Omega0=1.0, omega0=omega0)
        te = plasma_sheet.scattering_channel("TE", params)
        tm = plasma_sheet.scattering_channel("TM", params,
                                             include_surface=False)

        f_def = spectral.free_energy_defining(te, T, settings)
        f_closed = plasma_sheet.free_energy_channel_raw(
            "TE", T, params, settings, include_shell=False)
        out.append(_below(
            "oracle",
            f"sheet F_TE defining vs closed, omega0={omega0}, T=1",
            abs(f_def - f_closed) / abs(f_closed), 1e-6, label="<= 1e-06"))

        f_def = spectral.free_energy_defining(tm, T, settings)
        f_closed = plasma_sheet.free_energy_channel_raw(
            "TM", T, params, settings, include_shell=False)
        out.append(_below(
            "oracle",
            f"sheet F_TM continuum defining vs closed, omega0={omega0}, T=1",
            abs(f_def - f_closed) / abs(f_closed), 1e-6, label="<= 1e-06"))

    # Surface-mode band: at omega0=0 the k-integral over the mode and the
    # frequency form coincide, so the full TM channel (continuum plus
    # surface mode) can be compared against the defining representation.
    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.0)
    tm_full = plasma_sheet.scattering_channel("TM", params)
    f_def = spectral.free_energy_defining(tm_full, T, settings)
    f_closed = (plasma_sheet.free_energy_channel_raw(
        "TM", T, params, settings, include_shell=False)
        + plasma_sheet.plasmon_free_energy_raw(T, params, settings))
    out.append(_below(
        "oracle", "sheet F_TM+sf defining vs closed, omega0=0, T=1",
        abs(f_def - f_closed) / abs(f_closed), 1e-6, label="<= 1e-06"))

    # Raw plasmon identity at omega0=Omega0: the full-band integral is an
    # exact cubic/quintic polynomial in T, so the raw value must equal
    # those closed terms plus the finite subtraction integral.
    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=1.0)
    c3, c5 = plasma_sheet.plasmon_raw_coefficients(params)
    raw = plasma_sheet.plasmon_free_energy_raw(T, params, settings)
    ident = (c3 * T ** 3 + c5 * T ** 5
             + plasma_sheet.plasmon_free_energy_subtr(T, params, settings))
    out.append(_below(
        "oracle", "sheet plasmon raw vs polynomial + finite integral",
        abs(raw - ident) / abs(raw), 1e-8, label="<= 1e-08"))
    return out


_SLAB_H_GRID = (0.05, 0.1, 0.2, 0.3, 0.45, 0.6, 0.69, 0.75, 0.9, 0.97)
_SLAB_H2_GRID = (1.03, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0)


def _slab_h_oracle_checks(settings):
    params = slab.SlabParams(omega_p=1.0, L=1.0)
    out = []
    worst = 0.0
    for omega in _SLAB_H_GRID:
        closed = slab.h(omega, params, settings)
        quad = slab.h_defining(omega, params, settings)
        worst = max(worst, abs(closed - quad) / max(1.0, abs(quad)))
    out.append(_below(
        "oracle", "slab surface h below omega_p, closed vs defining",
        worst, 1e-8, label="<= 1e-08"))

    worst = 0.0
    for omega in _SLAB_H2_GRID:
        closed = slab.h(omega, params, settings)
        quad = slab.h_defining(omega, params, settings)
        worst = max(worst, abs(closed - quad) / max(1.0, abs(quad)))
    out.append(_below(
        "oracle", "slab surface h above omega_p, closed vs defining",
        worst, 1e-8, label="<= 1e-08"))

    # Continuity at the interior breakpoints: one-sided linear extrapolation
    # from each side must give the same limit.
    def gap(x0, delta):
        lo = 2.0 * slab.h(x0 - delta, params, settings) \
            - slab.h(x0 - 2.0 * delta, params, settings)
        hi = 2.0 * slab.h(x0 + delta, params, settings) \
            - slab.h(x0 + 2.0 * delta, params, settings)
        return abs(hi - lo)

    out.append(_below(
        "oracle", "slab h continuity at omega_p/sqrt(2)",
        gap(1.0 / math.sqrt(2.0), 1.5e-3), 1e-4, label="<= 1e-04"))
    out.append(_below(
        "oracle", "slab h continuity at omega_p",
        gap(1.0, 1e-5), 1e-6, label="<= 1e-06"))
    out.append(_abs(
        "oracle", "slab h at omega_p equals -pi*omega_p/2",
        -math.pi / 2.0, slab.h(1.0, params, settings), 1e-12))
    return out


def _slab_exp_oracle_checks(settings):
    params = slab.SlabParams(omega_p=1.0, L=1.0)
    out = []
    for T in (0.1, 1.0, 10.0):
        raw = slab.F_exp(T, params, settings)

        def tail(u, T=T):
            return u * u * bose_log(math.hypot(u, params.omega_p) / T)

        ident = (math.pi ** 2 / 90.0) * params.L * T ** 4 \
            + (params.L * T / (2.0 * math.pi ** 2)) * integrate_semiinf(
                tail, 0.0, settings, scale=max(T, params.omega_p)).value
        out.append(_below(
            "oracle", f"slab F_exp closed vs branch identity, T={T}",
            abs(raw - ident) / abs(ident), 1e-8, label="<= 1e-08"))

        f_def = slab.F_exp_defining(T, params, settings)
        out.append(_below(
            "oracle", f"slab F_exp closed vs defining 2D integral, T={T}",
            abs(raw - f_def) / abs(f_def), 1e-6, label="<= 1e-06"))
    return out


def _slab_surface_defining_checks(settings):
    params = slab.SlabParams(omega_p=1.0, L=1.0)
    ch = slab.surface_te_channel(params)
    f_def = spectral.free_energy_defining(ch, 1.0, settings)
    f_closed = slab.F_s_TE(1.0, params, settings)
    return [_below(
        "oracle", "slab F_s_TE defining vs closed, T=omega_p",
        abs(f_def - f_closed) / abs(f_closed), 1e-6, label="<= 1e-06")]


def _transmission_checks():
    params = slab.SlabParams(omega_p=1.0, L=1.0)
    out = []
    p_grid = (0.3, 0.7, 0.9, 1.1, 1.5, 3.0, 10.0)
    k_grid = (0.0, 0.5, 2.0)
    for ch in ("TE", "TM"):
        worst = 0.0
        worst_mod = 0.0
        for p in p_grid:
            for k in k_grid:
                t = slab.transmission(ch, p, k, params)
                worst = max(worst, t.factorization_residual)
                if p > params.omega_p:
                    worst_mod = max(worst_mod, abs(t.value))
        out.append(_below(
            "oracle", f"transmission factorization residual, {ch}",
            worst, 1e-12, label="<= 1e-12"))
        out.append(_below(
            "oracle", f"transmission modulus above omega_p, {ch}",
            worst_mod, 1.0 + 1e-12, label="<= 1"))
    return out


def _plasmon_checks():
    out = []
    worst = 0.0
    bound = 1.0 / math.sqrt(2.0)
    for L in (1.0, 2.0, 50.0):
        params = slab.SlabParams(omega_p=1.0, L=L)
        for k in np.geomspace(0.05, 20.0, 12):
            worst = max(worst, slab.plasmon_dispersion(k, params) - bound)
    out.append(_below(
        "oracle", "slab plasmon bound omega_sf <= omega_p/sqrt(2)",
        worst, 1e-12, label="<= 1e-12"))

    params = slab.SlabParams(omega_p=1.0, L=50.0)
    worst = 0.0
    for k in np.geomspace(0.1, 10.0, 10):
        w = slab.plasmon_dispersion(k, params)
        single = slab.single_surface_mode(k, params)
        worst = max(worst, abs(w - single) / single)
    out.append(_below(
        "oracle", "slab plasmon at L=50 vs single-surface mode",
        worst, 1e-6, label="<= 1e-06"))

    params = slab.SlabParams(omega_p=1.0, L=2.0)
    root = slab.plasmon_dispersion(1.0, params)
    out.append(_below(
        "oracle", "slab plasmon mode residual at k=1, L=2",
        slab.plasmon_mode_residual(root, 1.0, params), 1e-10,
        label="<= 1e-10"))

    for omega0 in (0.0, 0.8):
        sheet = plasma_sheet.SheetParams(Omega0=1.0, omega0=omega0)
        worst = 0.0
        for k in np.geomspace(max(omega0, 1e-3) + 1e-6, 10.0, 12):
            if k < omega0:
                continue
            worst = max(worst, plasma_sheet.plasmon_mode_residual(k, sheet))
        out.append(_below(
            "oracle", f"sheet plasmon dispersion residual, omega0={omega0}",
            worst, 1e-10, label="<= 1e-10"))
    return out


def _suite_oracle(settings):
    out = []
    out.extend(_sheet_h_oracle_checks(settings))
    out.extend(_sheet_defining_checks(settings))
    out.extend(_slab_h_oracle_checks(settings))
    out.extend(_slab_exp_oracle_checks(settings))
    out.extend(_slab_surface_defining_checks(settings))
    out.extend(_transmission_checks())
    out.extend(_plasmon_checks())
    return out


# ---------------------------------------------------------------------------
# asymptotics suite
# ---------------------------------------------------------------------------

def _suite_asymptotics(settings):
    out = []
    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.0)

    # Sheet low temperature: S/T slopes (Nernst behaviour with known slope).
    T = 1e-3
    s_te = plasma_sheet.entropy_channel("TE", T, params, settings)
    s_tm = plasma_sheet.entropy_channel("TM", T, params, settings)
    out.append(_rel("asymptotics", "sheet S_TE/T -> Omega0/6 at T=1e-3",
                    1.0 / 6.0, s_te / T, 1e-2))
    out.append(_rel("asymptotics", "sheet S_TM/T -> Omega0/18 at T=1e-3",
                    1.0 / 18.0, s_tm / T, 1e-2))
    out.append(_rel("asymptotics", "sheet S_total/T -> 2*Omega0/9 at T=1e-3",
                    2.0 / 9.0, (s_te + s_tm) / T, 1e-2))

    # Sheet high temperature: fitted growth coefficients of the raw parts.
    T_grid = np.geomspace(1e2, 1e3, 12)
    for ch, c3_ref, c2_ref in (
            ("TE", -_ZETA3 / (4.0 * math.pi), 1.0 / 12.0),
            ("TM", 0.0, 1.0 / 36.0)):
        samples = [(T, plasma_sheet.free_energy_channel_raw(
            ch, T, params, settings)) for T in T_grid]
        fit = fit_asymptotic(samples, ("T3", "T2", "TlogT", "T"))
        c3 = fit.coefficient("T3")
        c2 = fit.coefficient("T2")
        if c3_ref == 0.0:
            out.append(_abs(
                "asymptotics", f"sheet raw {ch} fit: T^3 coefficient",
                0.0, c3, 1e-2 * _ZETA3 / (4.0 * math.pi)))
        else:
            out.append(_rel(
                "asymptotics", f"sheet raw {ch} fit: T^3 coefficient",
                c3_ref, c3, 1e-2))
        out.append(_rel(
            "asymptotics", f"sheet raw {ch} fit: T^2 coefficient",
            c2_ref, c2, 1e-2))

    # Heat-kernel coefficients from asymptotic fits.
    for omega0 in (0.0, 0.5):
        p = plasma_sheet.SheetParams(Omega0=1.0, omega0=omega0)
        fitted = plasma_sheet.heat_kernel_fit(p, settings)
        exact = plasma_sheet.heat_kernel_coeffs(p)
        for ch in ("TE", "TM"):
            out.append(_rel(
                "asymptotics", f"heat kernel a_1/2 {ch}, omega0={omega0}",
                exact.a_half[ch], fitted.a_half[ch], 2e-2))
            out.append(_rel(
                "asymptotics", f"heat kernel a_1 {ch}, omega0={omega0}",
                exact.a_one[ch], fitted.a_one[ch], 2e-2))
    crossing = plasma_sheet.a_three_half_te_crossing(1.0)
    out.append(_rel(
        "asymptotics", "a_3/2 TE sign change located (reported)",
        1.0 / math.sqrt(2.0), crossing, 1e-6))

    # Slab low temperature, T = 1e-2 omega_p, L = 1/omega_p.
    sp = slab.SlabParams(omega_p=1.0, L=1.0)
    T = 1e-2
    f_s_tm = slab.F_s_TM(T, sp, settings)
    target = 5.0 * _ZETA3 / (4.0 * math.pi)
    out.append(_rel(
        "asymptotics",
        "slab F_s_TM/T^3 -> 5*zeta(3)/(4*pi) at T=1e-2 "
        "(slow T*log(1/T) convergence: fails by design at this T)",
        target, f_s_tm / T ** 3, 1e-2))

    f_l_te = slab.F_L_TE(T, sp, settings)
    ratio = f_l_te * 45.0 * (math.exp(2.0) - 1.0) / (-2.0 * math.pi ** 2 * T ** 4)
    out.append(_rel(
        "asymptotics", "slab F_L_TE low-T law at T=1e-2", 1.0, ratio, 2e-2))

    f_l_tm = slab.F_L_TM(T, sp, settings)
    out.append(_rel(
        "asymptotics",
        "slab F_L_TM/F_L_TE -> 3 at T=1e-2 "
        "(slow T*log(1/T) convergence: fails by design at this T)",
        3.0, f_l_tm / f_l_te, 2e-2))

    # Slab high temperature.
    out.append(_rel(
        "asymptotics", "slab S_exp_subtr -> omega_p^3*L/(12*pi) at T=1e3",
        1.0 / (12.0 * math.pi), slab.S_exp_subtr(1e3, sp, settings), 1e-2))

    T_grid = np.geomspace(1e2, 1e3, 10)
    samples = [(T, slab.F_s_TE_subtr(T, sp, settings)) for T in T_grid]
    fit = fit_asymptotic(samples, ("TlogT", "T", "1"))
    out.append(_rel(
        "asymptotics", "slab subtracted F_s_TE: T*log(T) coefficient",
        1.0 / (8.0 * math.pi), fit.coefficient("TlogT"), 3e-2))

    d = slab.slab_constant_d(settings)
    out.append(_rel(
        "asymptotics", "slab S_L_TE plateau -> -d*omega_p^2 at T=200",
        -d, slab.S_L("TE", 200.0, sp, settings), 5e-2))
    out.append(_rel(
        "asymptotics", "slab S_L_TM plateau -> -d*omega_p^2 at T=50",
        -d, slab.S_L("TM", 50.0, sp, settings), 5e-2))
    return out


# ---------------------------------------------------------------------------
# constants suite
# ---------------------------------------------------------------------------

def _suite_constants(settings):
    out = []

    # TM spectral sum rule with the shell term.
    for omega0 in (0.0, 0.5):
        params = plasma_sheet.SheetParams(Omega0=1.0, omega0=omega0)
        val = plasma_sheet.spectral_sum_rule("TM", params, settings)
        out.append(_below(
            "constants", f"sheet TM sum rule, omega0={omega0}",
            abs(val), 1e-6, label="<= 1e-06"))

    # Negative-entropy window of the high-T log coefficient.
    def c_of(omega0):
        p = plasma_sheet.SheetParams(Omega0=1.0, omega0=omega0)
        return plasma_sheet.high_T_log_coefficient(p, settings)

    from .numkernel import find_root_bracketed
    root = find_root_bracketed(c_of, 0.65, 0.80)
    out.append(_rel(
        "constants", "high-T log coefficient sign change near Omega0/sqrt(2)",
        1.0 / math.sqrt(2.0), root, 1e-6))
    out.append(_nonnegative("constants", "c(omega0=0.6) >= 0", c_of(0.6)))
    out.append(_negative("constants", "c(omega0=0.85) < 0", c_of(0.85)))
    out.append(_negative("constants", "c(omega0=1.2) < 0", c_of(1.2)))
    out.append(_nonnegative("constants", "c(omega0=1.3) >= 0", c_of(1.3)))

    params = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.8)
    s_total = plasma_sheet.total(1e3, params, settings).S_total
    out.append(_negative(
        "constants", "sheet S_total < 0 at omega0=0.8, T=1e3", s_total))

    params0 = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.0)
    s_min = min(plasma_sheet.total(T, params0, settings).S_total
                for T in np.geomspace(1e-2, 1e2, 13))
    out.append(_nonnegative(
        "constants", "sheet S_total >= 0 on T grid at omega0=0", s_min))

    # Slab constants.
    c_val = slab.slab_constant_c(settings)
    out.append(_abs("constants", "slab constant c", 1.5708, c_val, 1e-3))
    d_te = slab.slab_constant_d(settings, route="TE")
    d_tm = slab.slab_constant_d(settings, route="TM")
    out.append(_rel("constants", "slab constant d (TE route)",
                    -5.936e-4, d_te, 0.10))
    out.append(_rel("constants", "slab constant d (TM route vs TE route)",
                    d_te, d_tm, 0.10))
    return out


# ---------------------------------------------------------------------------
# thermo-identity and nernst suites
# ---------------------------------------------------------------------------

def _sheet_part_functions(part, params, settings):
    if part in ("TE", "TM"):
        return (lambda T: plasma_sheet.free_energy_channel(
                    part, T, params, settings),
                lambda T: plasma_sheet.entropy_channel(
                    part, T, params, settings))
    return (lambda T: plasma_sheet.plasmon_free_energy_subtr(
                T, params, settings),
            lambda T: plasma_sheet.plasmon_entropy_subtr(T, params, settings))


def _slab_part_functions(part, params, settings):
    table = {
        "s_TE": (slab.F_s_TE_subtr, slab.S_s_TE_subtr),
        "s_TM": (slab.F_s_TM_subtr, slab.S_s_TM_subtr),
        "exp": (slab.F_exp_subtr, slab.S_exp_subtr),
    }
    if part in table:
        f, s = table[part]
        return (lambda T: f(T, params, settings),
                lambda T: s(T, params, settings))
    ch = part.split("_")[1]
    f = slab.F_L_TE if ch == "TE" else slab.F_L_TM
    return (lambda T: f(T, params, settings),
            lambda T: slab.S_L(ch, T, params, settings))


def _identity_parts():
    settingsless = []
    sheet0 = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.0)
    sheet8 = plasma_sheet.SheetParams(Omega0=1.0, omega0=0.8)
    slab11 = slab.SlabParams(omega_p=1.0, L=1.0)
    for part in ("TE", "TM"):
        settingsless.append((f"sheet {part}, omega0=0", _sheet_part_functions,
                             part, sheet0))
    for part in ("TE", "TM", "sf"):
        settingsless.append((f"sheet {part}, omega0=0.8", _sheet_part_functions,
                             part, sheet8))
    for part in ("s_TE", "s_TM", "L_TE", "L_TM", "exp"):
        settingsless.append((f"slab {part}", _slab_part_functions,
                             part, slab11))
    return settingsless


def _suite_thermo_identity(settings):
    out = []
    grid = (1e-2, 1e-1, 1.0, 1e1, 1e2)
    for label, binder, part, params in _identity_parts():
        f_of, s_of = binder(part, params, settings)
        worst = 0.0
        for T in grid:
            h = 1e-4 * T
            s = s_of(T)
            s_fd = (f_of(T - h) - f_of(T + h)) / (2.0 * h)
            scale = max(abs(s), abs(s_fd))
            if scale < 1e-13:
                continue
            worst = max(worst, abs(s - s_fd) / scale)
        out.append(_below(
            "thermo-identity", f"S vs -dF/dT: {label}",
            worst, 1e-4, label="<= 1e-04"))
    return out


def _suite_nernst(settings):
    out = []
    for label, binder, part, params in _identity_parts():
        _, s_of = binder(part, params, settings)
        s_hi = s_of(1e-2)
        s_lo = s_of(1e-3)
        if abs(s_hi) < 1e-13 and abs(s_lo) < 1e-13:
            ratio = 0.0
        else:
            ratio = abs(s_lo) / max(abs(s_hi), 1e-300)
        out.append(_below(
            "nernst", f"|S(1e-3)| / |S(1e-2)| decreasing: {label}",
            ratio, 0.5, label="<= 0.5"))
    return out


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

_RUNNERS = {
    "oracle": _suite_oracle,
    "asymptotics": _suite_asymptotics,
    "constants": _suite_constants,
    "thermo-identity": _suite_thermo_identity,
    "nernst": _suite_nernst,
}


def run_suite(suite, settings=None):
    """Run one named suite of acceptance checks.

    Parameters
    ----------
    suite : str
        One of :data:`SUITES`.
    settings : QuadSettings, optional
        Quadrature settings forwarded to every numeric evaluation.

    Returns
    -------
    list of CheckResult

    Raises
    ------
    ValueError
        If `suite` is not a known suite name.
    """
    if suite not in _RUNNERS:
        raise ValueError(
            f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if settings is None:
        settings = DEFAULT_SETTINGS
    return _RUNNERS[suite](settings)


def run_all(settings=None):
    """Run every suite in :data:`SUITES` and concatenate the results."""
    results = []
    for suite in SUITES:
        results.extend(run_suite(suite, settings))
    return results


def summarize(results):
    """Build a short human-readable summary of a list of check results."""
    n_pass = sum(1 for r in results if r.passed)
    lines = [f"{n_pass}/{len(results)} checks passed"]
    for r in results:
        if not r.passed:
            lines.append(
                f"  FAIL [{r.suite}] {r.check}: "
                f"measured {r.measured:.6g}, expected {r.expected}, "
                f"tolerance {r.tolerance:g}")
    return "\n".join(lines)
