"""Thin plasma sheet: phase shifts, surface plasmon, thermodynamics.

An infinitesimally thin sheet of charged fluid with plasma strength
Omega0 and internal restoring frequency omega0 scatters TE and TM waves.
In natural units the phase shifts in the radial momentum p at frequency
omega (omega^2 = p^2 + k^2) are elementary:

    delta_TE = -atan(Omega(omega)/p)
    delta_TM = -pi/2 + atan(A/(Omega0 p)),   A = omega^2 - omega0^2

with Omega(omega) = Omega0 omega^2 / A.  The angular average of
d delta/dp over directions reduces every thermodynamic integral to one
radial integral against

    h(omega) = Int_0^1 d eps  d delta/dp (p = eps omega, k = omega
               sqrt(1 - eps^2)),

for which this module carries closed forms with series-stabilized
evaluation near the resonance shell and at large frequency.

Across omega = omega0 the TE phase shift drops by pi (arctangent branch)
and the TM phase shift loses pi at its p -> 0 edge for k < omega0.  In
the radial measure both appear as a point weight -pi omega0^2 / 2 at
omega0 ("shell weight"); it is what makes the TM spectral sum rule
vanish identically and places the TE sign change at Omega0/sqrt(2).

The TM channel carries a discrete surface mode (sheet plasmon)

    omega_sf(k)^2 = omega0^2 - Omega0^2/2
                    + Omega0 sqrt(k^2 - omega0^2 + Omega0^2/4),  k >= omega0,

whose free energy is reduced to a frequency integral over the weight
X(omega) = 2 (omega^2 - ell^2)/Omega0^2, ell^2 = omega0^2 - Omega0^2/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .numkernel import (
    DEFAULT_SETTINGS,
    QuadSettings,
    bose_log,
    find_root_bracketed,
    g,
    integrate_finite,
)
from .spectral import (
    Channel,
    HeatKernelSet,
    PartThermo,
    ScatteringChannel,
    SubtractionSpec,
    ThermoPoint,
    ZETA3,
    ZETA5,
)

__all__ = [
    "SheetParams",
    "SheetBreakdown",
    "Omega_of_omega",
    "phase_shift",
    "phase_shift_deriv",
    "h",
    "h_subtr",
    "shell_weight",
    "subtraction_spec",
    "free_energy_channel",
    "entropy_channel",
    "free_energy_channel_raw",
    "entropy_channel_raw",
    "spectral_sum_rule",
    "omega_sf",
    "surface_weight",
    "plasmon_raw_coefficients",
    "plasmon_free_energy_raw",
    "plasmon_entropy_raw",
    "plasmon_free_energy_subtr",
    "plasmon_entropy_subtr",
    "total",
    "high_T_log_coefficient",
    "high_T_log_coefficient_closed",
    "heat_kernel_coeffs",
    "heat_kernel_fit",
    "a_three_half_te_crossing",
    "scattering_channel",
]

_PARTS = ("TE", "TM", "sf")


@dataclass(frozen=True)
class SheetParams:
    """Sheet parameters: plasma strength Omega0 > 0, resonance omega0 >= 0."""

    Omega0: float
    omega0: float = 0.0

    def __post_init__(self) -> None:
        if not (self.Omega0 > 0.0 and math.isfinite(self.Omega0)):
            raise ValueError(f"Omega0 must be positive, got {self.Omega0}")
        if not (self.omega0 >= 0.0 and math.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be >= 0, got {self.omega0}")

    @property
    def ell2(self) -> float:
        """ell^2 = omega0^2 - Omega0^2/2, the surface-band edge squared."""
        return self.omega0 ** 2 - 0.5 * self.Omega0 ** 2

    def scale(self) -> float:
        return max(self.Omega0, self.omega0)


def Omega_of_omega(omega: float, params: SheetParams) -> float:
    """Frequency-dependent sheet response Omega0 omega^2 / (omega^2 - omega0^2).

    Defined on omega >= 0 away from the resonance shell omega = omega0,
    where it has a pole (ValueError).  Negative below the resonance.
    """
    if omega < 0.0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    a = omega * omega - params.omega0 ** 2
    if a == 0.0:
        raise ValueError(f"pole of the sheet response at omega = {omega}")
    return params.Omega0 * omega * omega / a


def _phase_pw(ch: str, p: float, omega: float, params: SheetParams) -> float:
    # (p, omega) parametrization; p = 0 returns the edge limit.
    w0, O0 = params.omega0, params.Omega0
    a = omega * omega - w0 * w0
    if ch == Channel.TE:
        if p == 0.0:
            return -0.5 * math.pi if a > 0.0 else 0.5 * math.pi
        return -math.atan(O0 * omega * omega / (a * p))
    if p == 0.0:
        return -math.pi if a < 0.0 else 0.0
    return -0.5 * math.pi + math.atan(a / (O0 * p))


def _phase_deriv_pw(ch: str, p: float, omega: float,
                    params: SheetParams) -> float:
    # d delta/dp at fixed transverse momentum, rational in (p, omega).
    w0, O0 = params.omega0, params.Omega0
    a = omega * omega - w0 * w0
    p2 = p * p
    if ch == Channel.TM:
        return O0 * (2.0 * p2 - a) / (a * a + O0 * O0 * p2)
    w2 = omega * omega
    num = O0 * (w2 * a + 2.0 * w0 * w0 * p2)
    den = a * a * p2 + O0 * O0 * w2 * w2
    return num / den


def phase_shift(ch: str, p: float, k: float, params: SheetParams) -> float:
    """Principal-branch phase shift at radial momentum p, transverse k.

    delta_TE = -atan(Omega/p), delta_TM = -pi/2 + atan(omega^2/(Omega p))
    with omega = sqrt(p^2 + k^2) and Omega the sheet response.  At the
    p = 0 edge the one-sided limit is returned: -pi/2 (TE) and 0 (TM)
    above the resonance shell, +pi/2 and -pi below it (the TM edge
    deficit behind the shell weight).

    Raises ValueError on the resonance shell omega = omega0.
    """
    Channel.validate(ch)
    if p < 0.0 or k < 0.0 or p + k <= 0.0:
        raise ValueError(f"need p, k >= 0, not both zero; got p={p}, k={k}")
    omega = math.hypot(p, k)
    if omega == params.omega0:
        raise ValueError(f"pole of the sheet response at omega = {omega}")
    return _phase_pw(ch, p, omega, params)


def phase_shift_deriv(ch: str, p: float, k: float,
                      params: SheetParams) -> float:
    """d delta/dp at fixed transverse momentum k, rational in (p, omega).

    The derivative is taken along the radial momentum with k held fixed
    (omega varies with p along the path); branch jumps of the arctangent
    do not enter, so the result is a rational function.
    """
    Channel.validate(ch)
    if p < 0.0 or k < 0.0 or p + k <= 0.0:
        raise ValueError(f"need p, k >= 0, not both zero; got p={p}, k={k}")
    omega = math.hypot(p, k)
    if omega == params.omega0:
        raise ValueError(f"pole of the sheet response at omega = {omega}")
    return _phase_deriv_pw(ch, p, omega, params)


def _h_te(omega: float, w0: float, O0: float) -> float:
    a = omega * omega - w0 * w0
    x = a / (O0 * omega)
    if abs(x) < 0.1:
        x2 = x * x
        f1 = 1.0 / 3 - x2 / 5 + x2 * x2 / 7 - x2 ** 3 / 9 + x2 ** 4 / 11
        f2 = 1.0 - x2 / 3 + x2 * x2 / 5 - x2 ** 3 / 7 + x2 ** 4 / 9
        return (2.0 * w0 * w0 * f1 + a * f2) / (O0 * omega * omega)
    num = (2.0 * omega * w0 * w0 * O0 * a
           + (a ** 3 - 2.0 * omega * omega * w0 * w0 * O0 * O0)
           * math.atan(x))
    return num / (omega * a ** 3)


def _h_tm(omega: float, w0: float, O0: float) -> float:
    a = omega * omega - w0 * w0
    u = math.inf if a == 0.0 else O0 * omega / a
    if abs(u) < 0.1:
        u2 = u * u
        s = u ** 3 * (1.0 / 3 - u2 / 5 + u2 * u2 / 7
                      - u2 ** 3 / 9 + u2 ** 4 / 11)
        return ((2.0 * a + O0 * O0) * s - O0 * O0 * u) / (omega * O0 * O0)
    return ((2.0 * omega * O0 - (2.0 * a + O0 * O0) * math.atan(u))
            / (omega * O0 * O0))


def h(ch: str, omega: float, params: SheetParams) -> float:
    """Angular average of d delta/dp along the arc p^2 + k^2 = omega^2.

    h(omega) = Int_0^1 d eps d delta/dp(p = eps omega,
    k = omega sqrt(1 - eps^2)), in closed form.  The TE average is
    continuous across omega0 with value 2/(3 Omega0); the TM average
    jumps by -pi/omega0 there (the value at exactly omega0 is the limit
    from above).

    Large-frequency behavior: h -> pi/(2 omega) - Omega0/omega^2 + ...
    (TE), h -> -Omega0/(3 omega^2) + ... (TM).
    """
    Channel.validate(ch)
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    if ch == Channel.TE:
        return _h_te(omega, params.omega0, params.Omega0)
    return _h_tm(omega, params.omega0, params.Omega0)


def h_subtr(ch: str, omega: float, params: SheetParams) -> float:
    """h with its large-frequency tail removed, O(omega^-4) at infinity.

    TE: h - pi/(2 omega) + Omega0/omega^2, TM: h + Omega0/(3 omega^2).
    Rearranged forms avoid the large-omega cancellation, so the result
    stays accurate where it is small.
    """
    Channel.validate(ch)
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    w0, O0 = params.omega0, params.Omega0
    w2 = omega * omega
    a = w2 - w0 * w0

    if ch == Channel.TM:
        u = math.inf if a == 0.0 else O0 * omega / a
        if abs(u) < 0.1:
            u2 = u * u
            s5 = -u ** 5 * (1.0 / 5 - u2 / 7 + u2 * u2 / 9
                            - u2 ** 3 / 11 + u2 ** 4 / 13)
            lead = O0 * (w2 * w2 * (w0 * w0 + O0 * O0) - w0 ** 6) \
                / (3.0 * w2 * a ** 3)
            return lead + (2.0 * a + O0 * O0) * s5 / (omega * O0 * O0)
        return _h_tm(omega, w0, O0) + O0 / (3.0 * w2)

    x = math.inf if a == 0.0 else a / (O0 * omega)
    if x >= 10.0:
        v = 1.0 / x
        v2 = v * v
        series = v ** 3 * (1.0 / 3 - v2 / 5 + v2 * v2 / 7
                           - v2 ** 3 / 9 + v2 ** 4 / 11 - v2 ** 5 / 13
                           + v2 ** 6 / 15)
        w02 = w0 * w0
        return (2.0 * O0 * w02 / (a * a)
                - O0 * w02 / (w2 * a)
                - math.pi * omega * w02 * O0 * O0 / a ** 3
                + series / omega
                + 2.0 * w2 * w02 * O0 * O0 * math.atan(v) / (omega * a ** 3))
    return (_h_te(omega, w0, O0) - 0.5 * math.pi / omega + O0 / w2)


def shell_weight(ch: str, params: SheetParams) -> float:
    """Point weight at omega0 in the radial spectral measure.

    The phase shift loses pi across the resonance shell: for TE as a
    branch jump of the arctangent on p^2 + k^2 = omega0^2, for TM as the
    p -> 0 edge deficit present for k < omega0.  Two-dimensional
    accounting of either gives the weight -pi omega0^2 / 2 per channel,
    booked here as a delta at omega0.  Zero when omega0 = 0.
    """
    Channel.validate(ch)
    return -0.5 * math.pi * params.omega0 ** 2


def subtraction_spec(ch: str, params: SheetParams) -> SubtractionSpec:
    """High-temperature terms removable from the raw channel free energy."""
    Channel.validate(ch)
    if ch == Channel.TE:
        return SubtractionSpec(c3=-ZETA3 / (4.0 * math.pi),
                               c2=params.Omega0 / 12.0)
    return SubtractionSpec(c3=0.0, c2=params.Omega0 / 36.0)


def _channel_integral(ch: str, T: float, params: SheetParams,
                      settings: QuadSettings, entropy: bool,
                      subtracted: bool, include_shell: bool) -> float:
    weight = g if entropy else bose_log
    dens = h_subtr if subtracted else h
    cut = max(40.0 * T, 50.0 * params.scale())
    pts = [v for v in (params.omega0, params.Omega0, T) if 0.0 < v < cut]

    def f(omega: float) -> float:
        return omega * omega * weight(omega / T) * dens(ch, omega, params)

    val = integrate_finite(f, 0.0, cut, settings, breakpoints=pts).value
    w0 = params.omega0
    if include_shell and w0 > 0.0:
        val += shell_weight(ch, params) * weight(w0 / T)
    return val / (2.0 * math.pi ** 2)


def free_energy_channel(ch: str, T: float, params: SheetParams,
                        settings: QuadSettings | None = None,
                        include_shell: bool = True) -> float:
    """Subtracted photonic free energy per unit area of one channel.

    F = (T / 2 pi^2) [ Int_0^inf omega^2 blog(omega/T) h_subtr d omega
        + shell_weight * blog(omega0/T) ].

    The shell point mass belongs to the channel's spectral measure but
    not to the smooth derivative density; pass ``include_shell=False``
    to get the bare continuum (what the defining (p, k) representation
    integrates to).
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    return T * _channel_integral(ch, T, params, settings, entropy=False,
                                 subtracted=True,
                                 include_shell=include_shell)


def entropy_channel(ch: str, T: float, params: SheetParams,
                    settings: QuadSettings | None = None,
                    include_shell: bool = True) -> float:
    """Subtracted photonic entropy per unit area of one channel (-dF/dT).

    S = (1 / 2 pi^2) [ Int omega^2 g(omega/T) h_subtr d omega
        + shell_weight * g(omega0/T) ].  The low-temperature slope
    (Omega0/6 for TE, Omega0/18 for TM) emerges from the omega -> 0
    region of the subtracted density without cancellation.
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    return _channel_integral(ch, T, params, settings, entropy=True,
                             subtracted=True, include_shell=include_shell)


def free_energy_channel_raw(ch: str, T: float, params: SheetParams,
                            settings: QuadSettings | None = None,
                            include_shell: bool = True) -> float:
    """Unsubtracted channel free energy, from the unsubtracted density.

    Differs from the subtracted form by c3 T^3 + c2 T^2 with the
    coefficients of ``subtraction_spec``; evaluated independently so the
    coefficients can be recovered by fitting rather than assumed.
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    return T * _channel_integral(ch, T, params, settings, entropy=False,
                                 subtracted=False,
                                 include_shell=include_shell)


def entropy_channel_raw(ch: str, T: float, params: SheetParams,
                        settings: QuadSettings | None = None,
                        include_shell: bool = True) -> float:
    """Unsubtracted channel entropy (-dF_raw/dT)."""
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    return _channel_integral(ch, T, params, settings, entropy=True,
                             subtracted=False, include_shell=include_shell)


def _tail_coefficients(ch: str, params: SheetParams) -> tuple[float, float]:
    w0, O0 = params.omega0, params.Omega0
    if ch == Channel.TE:
        return O0 ** 3 / 3.0 + O0 * w0 * w0, -math.pi * w0 * w0 * O0 * O0
    return O0 * w0 * w0 / 3.0 - O0 ** 3 / 15.0, 0.0


def spectral_sum_rule(ch: str, params: SheetParams,
                      settings: QuadSettings | None = None,
                      cutoff: float | None = None,
                      include_shell: bool = True) -> float:
    """Integrated subtracted spectral weight of one channel.

    J = Int_0^inf omega^2 h_subtr(omega) d omega (+ shell weight).

    This is the coefficient controlling the T log T term of the channel
    free energy, -J T log T / (2 pi^2).  Closed values: the continuum
    alone integrates to pi Omega0^2 / 4 (TE) and pi omega0^2 / 2 (TM)
    exactly; with the shell weight included the TM sum rule vanishes
    identically and the TE one becomes pi (Omega0^2/4 - omega0^2/2),
    changing sign at omega0 = Omega0/sqrt(2).

    The numerical cutoff is extended by the analytic omega^-4 and
    omega^-5 tails of h_subtr, so the quadrature error is well below
    1e-9 at the default cutoff.
    """
    Channel.validate(ch)
    settings = settings or DEFAULT_SETTINGS
    s = params.scale()
    W = cutoff if cutoff is not None else 2000.0 * s

    def f(omega: float) -> float:
        return omega * omega * h_subtr(ch, omega, params)

    mid = min(5.0 * s, W)
    pts = [v for v in (params.omega0, params.Omega0) if 0.0 < v < mid]
    val = integrate_finite(f, 0.0, mid, settings, breakpoints=pts).value
    if W > mid:
        val += integrate_finite(f, mid, W, settings).value
    c4, c5 = _tail_coefficients(ch, params)
    val += c4 / W + 0.5 * c5 / (W * W)
    if include_shell:
        val += shell_weight(ch, params)
    return val


def omega_sf(k: float, params: SheetParams) -> float:
    """Sheet plasmon frequency at transverse momentum k >= omega0.

    Monotone branch of Omega0 sqrt(k^2 - omega^2) = omega^2 - omega0^2;
    the mode sits below the light line, k^2 - omega_sf^2 =
    (y - Omega0/2)^2 with y = sqrt(k^2 - omega0^2 + Omega0^2/4).
    """
    w0, O0 = params.omega0, params.Omega0
    if k < w0:
        raise ValueError(f"plasmon band starts at k = omega0; got k={k}")
    y = math.sqrt(k * k - w0 * w0 + 0.25 * O0 * O0)
    return math.sqrt(w0 * w0 - 0.5 * O0 * O0 + O0 * y)


def plasmon_mode_residual(k: float, params: SheetParams) -> float:
    """Defect of omega_sf(k) in the TM pole condition.

    The surface mode solves Omega(omega) eta = omega^2 with
    eta = sqrt(k^2 - omega^2), equivalently
    Omega0 eta = omega^2 - omega0^2.  Returns the absolute defect of
    that equation at omega = omega_sf(k).
    """
    w = omega_sf(k, params)
    eta2 = k * k - w * w
    eta = math.sqrt(eta2) if eta2 > 0.0 else 0.0
    return abs(params.Omega0 * eta - (w * w - params.omega0 * params.omega0))


def surface_weight(omega: float, params: SheetParams) -> float:
    """Frequency weight X of the plasmon band, k dk = omega X d omega."""
    return 2.0 * (omega * omega - params.ell2) / params.Omega0 ** 2


def plasmon_raw_coefficients(params: SheetParams) -> tuple[float, float]:
    """(c3, c5) of the raw plasmon free energy c3 T^3 + c5 T^5."""
    w0, O0 = params.omega0, params.Omega0
    c3 = -(1.0 - 2.0 * w0 * w0 / (O0 * O0)) * ZETA3 / (2.0 * math.pi)
    c5 = -6.0 * ZETA5 / (math.pi * O0 * O0)
    return c3, c5


def _plasmon_integral(T: float, params: SheetParams,
                      settings: QuadSettings, entropy: bool,
                      lo: float, hi: float) -> float:
    weight = g if entropy else bose_log

    def f(omega: float) -> float:
        return omega * surface_weight(omega, params) * weight(omega / T)

    if hi <= lo:
        return 0.0
    pts = [v for v in (params.omega0, T) if lo < v < hi]
    return integrate_finite(f, lo, hi, settings,
                            breakpoints=pts).value / (2.0 * math.pi)


def _band_edge(params: SheetParams) -> float:
    e2 = params.ell2
    return math.sqrt(e2) if e2 > 0.0 else 0.0


def plasmon_free_energy_raw(T: float, params: SheetParams,
                            settings: QuadSettings | None = None) -> float:
    """Raw plasmon free energy, (T/2 pi) Int_max(0, ell) omega X blog.

    The lower limit is the band edge in frequency: ell =
    sqrt(omega0^2 - Omega0^2/2) when positive, else 0.  Equals
    c3 T^3 + c5 T^5 + subtracted part as an algebraic identity.
    """
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    settings = settings or DEFAULT_SETTINGS
    lo = _band_edge(params)
    hi = max(40.0 * T, 50.0 * params.scale())
    return T * _plasmon_integral(T, params, settings, False, lo, hi)


def plasmon_entropy_raw(T: float, params: SheetParams,
                        settings: QuadSettings | None = None) -> float:
    """Raw plasmon entropy, (1/2 pi) Int_max(0, ell) omega X g."""
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    settings = settings or DEFAULT_SETTINGS
    lo = _band_edge(params)
    hi = max(40.0 * T, 50.0 * params.scale())
    return _plasmon_integral(T, params, settings, True, lo, hi)


def plasmon_free_energy_subtr(T: float, params: SheetParams,
                              settings: QuadSettings | None = None) -> float:
    """Plasmon free energy with its c3 T^3 + c5 T^5 part removed.

    Vanishes identically for omega0 <= Omega0/sqrt(2); otherwise equals
    -(T/2 pi) Int_0^ell omega X blog d omega, evaluated directly so no
    cancellation of large terms occurs.
    """
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    settings = settings or DEFAULT_SETTINGS
    lo = _band_edge(params)
    if lo == 0.0:
        return 0.0
    return -T * _plasmon_integral(T, params, settings, False, 0.0, lo)


def plasmon_entropy_subtr(T: float, params: SheetParams,
                          settings: QuadSettings | None = None) -> float:
    """Plasmon entropy beyond the smooth c3/c5 background; >= 0.

    Carries the log T growth (x^2 / (4 pi Omega0^2)) log T at high
    temperature for x = omega0^2 - Omega0^2/2 > 0.
    """
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    settings = settings or DEFAULT_SETTINGS
    lo = _band_edge(params)
    if lo == 0.0:
        return 0.0
    return -_plasmon_integral(T, params, settings, True, 0.0, lo)


@dataclass(frozen=True)
class SheetBreakdown:
    """Subtracted per-part thermodynamics of the sheet at one temperature.

    The six named fields are the subtracted free energies and entropies;
    ``point`` carries the full record (raw values included).
    """

    F_TE: float
    F_TM: float
    F_sf: float
    S_TE: float
    S_TM: float
    S_sf: float
    point: ThermoPoint

    @property
    def F_total(self) -> float:
        return self.F_TE + self.F_TM + self.F_sf

    @property
    def S_total(self) -> float:
        return self.S_TE + self.S_TM + self.S_sf


def total(T: float, params: SheetParams,
          settings: QuadSettings | None = None) -> SheetBreakdown:
    """All sheet parts at one temperature (TE, TM photonic; sf plasmon).

    Subtracted values are computed from the subtracted densities; the
    raw entries of the underlying ThermoPoint are reconstructed by
    adding back the analytic growth terms (exact by construction).
    """
    settings = settings or DEFAULT_SETTINGS
    parts = []
    for ch in Channel.ALL:
        spec = subtraction_spec(ch, params)
        Fs = free_energy_channel(ch, T, params, settings)
        Ss = entropy_channel(ch, T, params, settings)
        parts.append(PartThermo(ch,
                                Fs + spec.c3 * T ** 3 + spec.c2 * T ** 2,
                                Ss - 3.0 * spec.c3 * T ** 2
                                - 2.0 * spec.c2 * T,
                                Fs, Ss))
    c3, c5 = plasmon_raw_coefficients(params)
    Fs = plasmon_free_energy_subtr(T, params, settings)
    Ss = plasmon_entropy_subtr(T, params, settings)
    parts.append(PartThermo(
        "sf",
        Fs + c3 * T ** 3 + c5 * T ** 5,
        Ss - 3.0 * c3 * T ** 2 - 5.0 * c5 * T ** 4,
        Fs,
        Ss,
    ))
    point = ThermoPoint(T, tuple(parts))
    te, tm, sf = (point.part(name) for name in _PARTS)
    return SheetBreakdown(
        F_TE=te.free_energy_subtr, F_TM=tm.free_energy_subtr,
        F_sf=sf.free_energy_subtr,
        S_TE=te.entropy_subtr, S_TM=tm.entropy_subtr,
        S_sf=sf.entropy_subtr,
        point=point,
    )


def high_T_log_coefficient_closed(params: SheetParams) -> float:
    """Closed coefficient of log T in the total entropy at high T.

    c = (1/4 pi) [ x^2 Theta(x) / Omega0^2 - x ],
    x = omega0^2 - Omega0^2/2.

    Negative exactly on Omega0/sqrt(2) < omega0 < sqrt(3/2) Omega0, the
    window where the total entropy dips below zero at large T.
    """
    x = params.ell2
    out = -x
    if x > 0.0:
        out += x * x / params.Omega0 ** 2
    return out / (4.0 * math.pi)


def high_T_log_coefficient(params: SheetParams,
                           settings: QuadSettings | None = None) -> float:
    """Numerical log T entropy coefficient, from the channel sum rules.

    The photonic channels contribute J_ch / (2 pi^2) each (quadrature);
    the plasmon band contributes its analytic x^2/(4 pi Omega0^2) term
    when the band edge is real.
    """
    settings = settings or DEFAULT_SETTINGS
    out = sum(spectral_sum_rule(ch, params, settings)
              for ch in Channel.ALL) / (2.0 * math.pi ** 2)
    x = params.ell2
    if x > 0.0:
        out += x * x / (4.0 * math.pi * params.Omega0 ** 2)
    return out


def heat_kernel_coeffs(params: SheetParams) -> HeatKernelSet:
    """Analytic heat-kernel coefficients per channel.

    The TM entry combines the photonic TM part with the surface mode,
    which carries that channel's T^3 and T log T behavior; the TE entry
    is purely photonic.
    """
    w0, O0 = params.omega0, params.Omega0
    x = params.ell2
    rt_pi = math.sqrt(math.pi)
    a_half = {
        Channel.TE: rt_pi,
        Channel.TM: 2.0 * rt_pi * (1.0 - 2.0 * w0 * w0 / (O0 * O0)),
    }
    a_one = {
        Channel.TE: -2.0 * O0,
        Channel.TM: -2.0 * O0 / 3.0,
    }
    a_three_half = {
        Channel.TE: rt_pi * (O0 * O0 - 2.0 * w0 * w0),
        Channel.TM: 2.0 * rt_pi * x * x / (O0 * O0) if x > 0.0 else 0.0,
    }
    return HeatKernelSet(a_half, a_one, a_three_half, {}, {})


def heat_kernel_fit(params: SheetParams,
                    settings: QuadSettings | None = None,
                    temperatures: tuple[float, ...] | None = None,
                    ) -> HeatKernelSet:
    """Heat-kernel coefficients from high-temperature fits.

    Fits the raw channel free energies on a high-T grid over the basis
    {T^3, T^2, T log T, T}.  The TM samples include the surface mode
    without its T^5 term, which is not in the fit basis; that piece is
    assembled as the analytic T^3 coefficient plus the subtracted
    remainder rather than as raw minus c5 T^5, because the latter
    cancels two T^5-scale numbers and the quadrature noise left over
    swamps the T^2-scale content the a_1 fit needs.
    """
    settings = settings or DEFAULT_SETTINGS
    if temperatures is None:
        s = params.scale()
        temperatures = tuple(np.geomspace(100.0 * s, 1000.0 * s, 12))
    c3_sf, _ = plasmon_raw_coefficients(params)
    samples: dict[str, list[tuple[float, float]]] = {
        Channel.TE: [], Channel.TM: []}
    for T in temperatures:
        samples[Channel.TE].append(
            (T, free_energy_channel_raw(Channel.TE, T, params, settings)))
        tm = (free_energy_channel_raw(Channel.TM, T, params, settings)
              + c3_sf * T ** 3
              + plasmon_free_energy_subtr(T, params, settings))
        samples[Channel.TM].append((T, tm))
    return spectral.extract_heat_kernel(samples)


def a_three_half_te_crossing(Omega0: float = 1.0,
                             settings: QuadSettings | None = None) -> float:
    """omega0 where the TE T log T coefficient changes sign (bisection).

    The closed sum rule pi (Omega0^2/4 - omega0^2/2) crosses zero at
    omega0 = Omega0/sqrt(2); this measures the crossing from the
    quadrature-evaluated sum rule.
    """
    settings = settings or DEFAULT_SETTINGS

    def f(w0: float) -> float:
        return spectral_sum_rule(Channel.TE,
                                 SheetParams(Omega0=Omega0, omega0=w0),
                                 settings)

    return find_root_bracketed(f, 0.5 * Omega0, 0.9 * Omega0, x_tol=1e-9)


def scattering_channel(ch: str, params: SheetParams,
                       include_surface: bool = True) -> ScatteringChannel:
    """Adapter to the generic (p, k) channel interface.

    The surface mode belongs to the TM channel; pass
    ``include_surface=False`` to compare continuum parts in isolation.
    """
    Channel.validate(ch)
    w0 = params.omega0

    def delta(p: float, k: float) -> float:
        return _phase_pw(ch, p, math.hypot(p, k), params)

    def ddelta(p: float, k: float) -> float:
        return _phase_deriv_pw(ch, p, math.hypot(p, k), params)

    O0 = params.Omega0

    def brk(k: float) -> tuple[float, ...]:
        pts = []
        if 0.0 < k < w0:
            pts.append(math.sqrt(w0 * w0 - k * k))
        if ch == Channel.TM:
            # The TM phase derivative peaks where |omega^2 - omega0^2|
            # crosses Omega0 p; for small k the peak sits at
            # p ~ (k^2 - omega0^2)/Omega0, far below the thermal scale,
            # and the quadrature needs the hint.
            a0 = k * k - w0 * w0
            disc = O0 * O0 - 4.0 * a0
            if disc >= 0.0:
                root = math.sqrt(disc)
                for sgn in (1.0, -1.0):
                    for p in ((sgn * O0 + root) / 2.0,
                              (sgn * O0 - root) / 2.0):
                        if p > 0.0:
                            pts.append(p)
        return tuple(sorted(pts))

    surface = None
    k_min = 0.0
    if ch == Channel.TM and include_surface:
        surface = lambda k: omega_sf(k, params)  # noqa: E731
        k_min = w0
    return ScatteringChannel(
        name=f"sheet-{ch}",
        phase_shift=delta,
        phase_shift_deriv=ddelta,
        surface_mode=surface,
        k_min_surface=k_min,
        p_breakpoints=brk,
        fd_scale=params.scale(),
    )


def _check_T(T: float) -> None:
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
