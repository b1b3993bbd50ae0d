"""Dielectric slab with plasma response: scattering parts and plasmon.

A slab of thickness L with permittivity eps(omega) = 1 - omega_p^2 /
omega^2 splits each polarization channel's scattering phase into three
additive pieces, treated as separate thermodynamic parts:

* a surface part delta_s, independent of L, concentrated at momenta
  p < omega_p (total reflection region);
* a thickness part delta_L from the internal round trips, decaying with
  L and oscillating in p above omega_p;
* an "optical-path" part (Re q - p) L from traversal, whose branch
  point at p = omega_p yields the exponential-tail free energy F_exp.

Parts s and exp need high-temperature subtractions; the L part is
finite as it stands.  The TM surface part is evaluated through the
momentum moment

    h(omega) = Int_0^min(omega, omega_p) delta_s_TM(p, omega) dp,

in closed form on both sides of omega_p (complex-log continuation near
omega_p/sqrt(2), where the real arrangement degenerates).

The TM channel additionally carries a guided surface mode (slab
plasmon) below omega_p/sqrt(2).  Its dispersion is solved here but the
mode is intentionally NOT added to the thermodynamic totals; outputs
that mention it flag this.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .numkernel import (
    DEFAULT_SETTINGS,
    QuadratureError,
    QuadSettings,
    bose_kernel,
    bose_log,
    bose_occupation,
    find_root_bracketed,
    g,
    integrate_finite,
    integrate_semiinf,
)
from .spectral import (
    Channel,
    PartThermo,
    ScatteringChannel,
    SubtractionSpec,
    ThermoPoint,
    ZETA3,
)

__all__ = [
    "SlabParams",
    "SlabBreakdown",
    "Transmission",
    "epsilon",
    "transmission",
    "delta_s",
    "h",
    "h_defining",
    "validate_surface_weight",
    "F_s_TE",
    "F_s_TE_subtr",
    "S_s_TE",
    "S_s_TE_subtr",
    "F_s_TM",
    "F_s_TM_subtr",
    "S_s_TM",
    "S_s_TM_subtr",
    "slab_constant_c",
    "slab_constant_d",
    "delta_L",
    "h_L",
    "F_L_TE",
    "F_L_TM",
    "S_L",
    "thickness_tlogt_coefficient",
    "F_exp",
    "F_exp_subtr",
    "S_exp",
    "S_exp_subtr",
    "F_exp_defining",
    "validate_exp_part",
    "plasmon_dispersion",
    "plasmon_mode_residual",
    "single_surface_mode",
    "subtraction_spec",
    "total",
    "surface_te_channel",
    "PART_NAMES",
]

PART_NAMES = ("s_TE", "s_TM", "L_TE", "L_TM", "exp")


@dataclass(frozen=True)
class SlabParams:
    """Slab parameters: plasma frequency omega_p > 0, thickness L > 0."""

    omega_p: float
    L: float

    def __post_init__(self) -> None:
        if not (self.omega_p > 0.0 and math.isfinite(self.omega_p)):
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")
        if not (self.L > 0.0 and math.isfinite(self.L)):
            raise ValueError(f"L must be positive, got {self.L}")


def epsilon(omega: float, params: SlabParams) -> float:
    """Plasma permittivity 1 - omega_p^2 / omega^2."""
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    return 1.0 - (params.omega_p / omega) ** 2


def _gamma(p: float, params: SlabParams) -> float:
    return math.sqrt(max(params.omega_p ** 2 - p * p, 0.0))


def _q_complex(p: float, params: SlabParams) -> complex:
    """Internal momentum: real above omega_p, +i gamma below."""
    return cmath.sqrt(complex(p * p - params.omega_p ** 2, 0.0))


@dataclass(frozen=True)
class Transmission:
    """Transmission amplitude and its exact three-factor split.

    value = surface * thickness * propagation, with
    surface = 4 a q / (a + q)^2, thickness = 1 / (1 - rho^2 e^{2iqL}),
    propagation = e^{i (q - p) L}, rho = (a - q)/(a + q), and a = p (TE)
    or eps p (TM).
    """

    value: complex
    surface: complex
    thickness: complex
    propagation: complex

    @property
    def factorization_residual(self) -> float:
        return abs(self.value - self.surface * self.thickness
                   * self.propagation)


def transmission(ch: str, p: float, k: float,
                 params: SlabParams) -> Transmission:
    """Transmission amplitude through the slab at momenta (p, k).

    Parameters
    ----------
    ch : str
        "TE" or "TM".
    p, k : float
        Momentum normal to the slab (outside) and transverse momentum;
        the frequency is omega = sqrt(p^2 + k^2) and the internal normal
        momentum is q = sqrt(p^2 - omega_p^2) (evanescent below omega_p).
    params : SlabParams

    Raises
    ------
    ValueError
        On a vanishing denominator (discrete resonance) and on p <= 0.
    """
    Channel.validate(ch)
    if p <= 0.0:
        raise ValueError(f"p must be positive, got {p}")
    L = params.L
    omega = math.hypot(p, k)
    a = complex(p) if ch == Channel.TE else complex(epsilon(omega, params) * p)
    q = _q_complex(p, params)
    den = ((a + q) ** 2 * cmath.exp(-1j * q * L)
           - (a - q) ** 2 * cmath.exp(1j * q * L))
    scale = (abs(a) + abs(q)) ** 2
    if abs(den) <= 1e-14 * max(scale, 1e-300):
        raise ValueError(
            f"transmission denominator vanishes at p={p}, k={k} "
            "(discrete resonance)"
        )
    t = 4.0 * a * q * cmath.exp(-1j * p * L) / den
    if a + q == 0.0:
        raise ValueError(f"degenerate surface factor at p={p}, k={k}")
    t_s = 4.0 * a * q / (a + q) ** 2
    rho = (a - q) / (a + q)
    t_l = 1.0 / (1.0 - rho * rho * cmath.exp(2j * q * L))
    prop = cmath.exp(1j * (q - p) * L)
    return Transmission(t, t_s, t_l, prop)


def delta_s(ch: str, p: float, omega: float, params: SlabParams) -> float:
    """Surface part of the phase shift (thickness-independent).

    TE: pi/2 - 2 atan(gamma/p) for p < omega_p, 0 above (the pi/2 jump
    at omega_p is compensated by the thickness part).  TM:
    -pi/2 + 2 atan(eps p / gamma) for p <= omega_p, 0 above; the edge
    values are -pi/2 at p = 0 and -3pi/2 (omega < omega_p) or +pi/2
    (omega > omega_p) as p -> omega_p.
    """
    Channel.validate(ch)
    if p < 0.0:
        raise ValueError(f"p must be >= 0, got {p}")
    wp = params.omega_p
    if ch == Channel.TE:
        if p >= wp:
            return 0.5 * math.pi if p == wp else 0.0
        if p == 0.0:
            return -0.5 * math.pi
        return 0.5 * math.pi - 2.0 * math.atan(_gamma(p, params) / p)
    if p > wp:
        return 0.0
    eps = epsilon(omega, params)
    if p == wp:
        if eps == 0.0:
            return -0.5 * math.pi
        return -0.5 * math.pi + math.copysign(math.pi, eps)
    return -0.5 * math.pi + 2.0 * math.atan(eps * p / _gamma(p, params))


def h_defining(omega: float, params: SlabParams,
               settings: QuadSettings | None = None) -> float:
    """Momentum moment of the TM surface phase by direct quadrature."""
    settings = settings or DEFAULT_SETTINGS
    hi = min(omega, params.omega_p)
    return integrate_finite(
        lambda p: delta_s(Channel.TM, p, omega, params), 0.0, hi, settings
    ).value


def _h_below(omega: float, wp: float) -> float:
    # omega < omega_p, away from omega_p/sqrt(2)
    w2 = omega * omega
    D = wp * wp - w2
    S2 = wp * wp - 2.0 * w2
    sD = math.sqrt(D)
    base = -0.5 * math.pi * omega - 2.0 * omega * math.atan(sD / omega)
    if S2 > 0.0:
        S = math.sqrt(S2)
        nu = w2 / (D + sD * S)
        mu = w2 * w2 / (D * (D + wp * S))
        acoth_term = -0.5 * math.log((2.0 - nu) / nu)
        atanh_term = 0.5 * math.log((2.0 - mu) / mu)
        return base + (2.0 * w2 / S) * (acoth_term + atanh_term)
    S = cmath.sqrt(complex(S2))
    val = (2.0 * w2 / S) * (-cmath.atanh(S / sD) + cmath.atanh(wp * S / D))
    return base + val.real


def _h_above(omega: float, wp: float) -> float:
    # omega > omega_p
    w2 = omega * omega
    r = math.sqrt(2.0 * w2 - wp * wp)
    return (0.5 * math.pi * wp
            + (2.0 * w2 / r) * math.atan(wp * r / (wp * wp - w2)))


def h(omega: float, params: SlabParams,
      settings: QuadSettings | None = None) -> float:
    """Closed form of Int_0^min(omega, omega_p) delta_s_TM dp.

    Continuous at omega_p with value -pi omega_p / 2 and tending to
    (pi - 4) omega_p / 2 at large frequency; behaves as
    -3 pi omega / 2 + 2 omega^2 log(omega_p/omega) / omega_p near zero.
    Inside a narrow window around omega_p/sqrt(2) the closed arrangement
    degenerates (0/0) and the defining quadrature is used instead.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    wp = params.omega_p
    if abs(omega - wp / math.sqrt(2.0)) < 1e-3 * wp:
        return h_defining(omega, params, settings)
    if omega == wp:
        return -0.5 * math.pi * wp
    if omega < wp:
        return _h_below(omega, wp)
    return _h_above(omega, wp)


_H_VALIDATION_GRID = (0.05, 0.3, 0.69, 0.9, 1.3, 3.0)
_H_VALIDATED: set[float] = set()


def validate_surface_weight(params: SlabParams, rel_tol: float = 1e-8) -> None:
    """Hard consistency check of the closed h against its definition.

    Compares closed and quadrature evaluations on a fixed frequency grid
    (once per omega_p) and raises on disagreement; called by the TM
    surface thermodynamics before trusting the closed form.
    """
    if params.omega_p in _H_VALIDATED:
        return
    for frac in _H_VALIDATION_GRID:
        omega = frac * params.omega_p
        closed = h(omega, params)
        defining = h_defining(omega, params)
        if abs(closed - defining) > rel_tol * max(abs(defining), 1e-12):
            raise QuadratureError(
                f"closed TM surface weight disagrees with its definition at "
                f"omega={omega}: {closed!r} vs {defining!r}"
            )
    _H_VALIDATED.add(params.omega_p)


def F_s_TE(T: float, params: SlabParams,
           settings: QuadSettings | None = None) -> float:
    """TE surface free energy per unit area.

    F = -zeta(3) T^3 / (2 pi) - (T/pi^2) Int_0^omega_p omega
        blog(omega/T) atan(gamma(omega)/omega) d omega,
    gamma(omega) = sqrt(omega_p^2 - omega^2).
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    wp = params.omega_p

    def f(omega: float) -> float:
        return (omega * bose_log(omega / T)
                * math.atan(math.sqrt(wp * wp - omega * omega) / omega))

    val = integrate_finite(f, 0.0, wp, settings,
                           breakpoints=[T] if T < wp else []).value
    return -ZETA3 * T ** 3 / (2.0 * math.pi) - T * val / math.pi ** 2


def S_s_TE(T: float, params: SlabParams,
           settings: QuadSettings | None = None) -> float:
    """TE surface entropy per unit area (-dF/dT)."""
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    wp = params.omega_p

    def f(omega: float) -> float:
        return (omega * g(omega / T)
                * math.atan(math.sqrt(wp * wp - omega * omega) / omega))

    val = integrate_finite(f, 0.0, wp, settings,
                           breakpoints=[T] if T < wp else []).value
    return 3.0 * ZETA3 * T ** 2 / (2.0 * math.pi) - val / math.pi ** 2


def F_s_TE_subtr(T: float, params: SlabParams,
                 settings: QuadSettings | None = None) -> float:
    """TE surface free energy with the T^3 growth removed.

    Grows as (omega_p^2 / 8 pi) T log(2T/omega_p) at high temperature;
    the corresponding entropy deficit is the slab's negative surface
    entropy.
    """
    spec = subtraction_spec("s_TE", params)
    return spec.free_energy(F_s_TE(T, params, settings), T)


def S_s_TE_subtr(T: float, params: SlabParams,
                 settings: QuadSettings | None = None) -> float:
    """TE surface entropy beyond the T^2 term; -> -(omega_p^2/8 pi) log T."""
    spec = subtraction_spec("s_TE", params)
    return spec.entropy(S_s_TE(T, params, settings), T)


def _s_tm_cut(T: float, params: SlabParams) -> tuple[float, list[float]]:
    wp = params.omega_p
    cut = max(40.0 * T, 8.0 * wp)
    pts = [v for v in (wp, T) if 0.0 < v < cut]
    return cut, pts


def F_s_TM(T: float, params: SlabParams,
           settings: QuadSettings | None = None) -> float:
    """TM surface free energy per unit area.

    Sum of the p = omega_p edge contribution

        A = -zeta(3) T^3/(2 pi) - (T/4 pi) Int_0^omega_p omega
            blog(omega/T) d omega

    and the bulk-moment piece

        B = -(1/2 pi^2) Int_0^inf omega n(omega/T) h(omega) d omega

    with n the Bose occupation.  The closed h is hard-checked against
    its defining quadrature once per omega_p.
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    validate_surface_weight(params)
    wp = params.omega_p
    a_int = integrate_finite(
        lambda w: w * bose_log(w / T), 0.0, wp, settings,
        breakpoints=[T] if T < wp else []).value
    a_part = -ZETA3 * T ** 3 / (2.0 * math.pi) - T * a_int / (4.0 * math.pi)

    cut, pts = _s_tm_cut(T, params)
    b_int = integrate_finite(
        lambda w: w * bose_occupation(w / T) * h(w, params, settings),
        0.0, cut, settings, breakpoints=pts).value
    return a_part - b_int / (2.0 * math.pi ** 2)


def S_s_TM(T: float, params: SlabParams,
           settings: QuadSettings | None = None) -> float:
    """TM surface entropy per unit area (-dF/dT)."""
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    validate_surface_weight(params)
    wp = params.omega_p
    a_int = integrate_finite(
        lambda w: w * g(w / T), 0.0, wp, settings,
        breakpoints=[T] if T < wp else []).value

    cut, pts = _s_tm_cut(T, params)
    b_int = integrate_finite(
        lambda w: w * w * bose_kernel(w / T) * h(w, params, settings),
        0.0, cut, settings, breakpoints=pts).value
    return (3.0 * ZETA3 * T ** 2 / (2.0 * math.pi)
            - a_int / (4.0 * math.pi)
            + b_int / (2.0 * math.pi ** 2 * T * T))


def F_s_TM_subtr(T: float, params: SlabParams,
                 settings: QuadSettings | None = None) -> float:
    """TM surface free energy minus its T^3 and T^2 growth."""
    spec = subtraction_spec("s_TM", params)
    return spec.free_energy(F_s_TM(T, params, settings), T)


def S_s_TM_subtr(T: float, params: SlabParams,
                 settings: QuadSettings | None = None) -> float:
    """TM surface entropy minus its T^2 and T terms."""
    spec = subtraction_spec("s_TM", params)
    return spec.entropy(S_s_TM(T, params, settings), T)


def slab_constant_c(settings: QuadSettings | None = None) -> float:
    """Linear-in-T coefficient of the TM surface part, at omega_p = 1.

    c = Int_0^inf (h_inf - h(omega)) d omega with h_inf = (pi - 4)/2,
    so that B contains + c T / (2 pi^2) at high temperature.  Equals
    pi/2 analytically; dimensionless (scale by omega_p^2 for general
    omega_p).
    """
    settings = settings or DEFAULT_SETTINGS
    params = SlabParams(omega_p=1.0, L=1.0)
    h_inf = 0.5 * (math.pi - 4.0)
    W = 200.0

    def f(omega: float) -> float:
        return h_inf - h(omega, params, settings)

    val = integrate_finite(f, 0.0, W, settings,
                           breakpoints=[1.0 / math.sqrt(2.0), 1.0]).value
    # beyond W: h - h_inf = -(2/3)/omega^2 + O(omega^-4)
    return val + 2.0 / (3.0 * W)


def delta_L(ch: str, p: float, omega: float, params: SlabParams) -> float:
    """Thickness part of the phase shift (principal branch).

    For p < omega_p the internal momentum is evanescent and the phase is
    arg(1 - r^2 e^{-2 gamma L}) with r the unimodular sub-barrier
    reflection ratio; for p > omega_p it is -arg(1 - rho^2 e^{2iqL}).
    Since |r^2 e^{-2 gamma L}| < 1 and |rho| < 1, the principal argument
    is already continuous in p on each side of omega_p; the jump at
    omega_p itself compensates the surface part.  Vanishes as p -> 0
    (like 4 p / (omega_p (e^{2 omega_p L} - 1)) in TE) and as L -> inf.
    """
    Channel.validate(ch)
    if p <= 0.0:
        raise ValueError(f"p must be positive, got {p}")
    wp, L = params.omega_p, params.L
    if ch == Channel.TM:
        if omega < p:
            raise ValueError(f"need omega >= p, got omega={omega}, p={p}")
        eps = epsilon(omega, params)
        if p < wp:
            gam = _gamma(p, params)
            z = complex(eps * p, gam)
            ratio = (z / z.conjugate()) ** 2
            return cmath.phase(1.0 - ratio * math.exp(-2.0 * gam * L))
        q = math.sqrt(p * p - wp * wp)
        if eps * p + q == 0.0:
            return 0.0
        rho = (eps * p - q) / (eps * p + q)
        return -cmath.phase(1.0 - rho * rho * cmath.exp(2j * q * L))
    if p < wp:
        gam = _gamma(p, params)
        z = cmath.exp(4j * math.atan2(gam, p) - 2.0 * gam * L)
        return cmath.phase(1.0 - z)
    q = math.sqrt(p * p - wp * wp)
    rho = (p - q) / (p + q)
    return -cmath.phase(1.0 - rho * rho * cmath.exp(2j * q * L))


def _osc_block(params: SlabParams) -> float:
    return 40.0 * math.pi / params.L


def _blocked_integral(f, a: float, b: float, settings: QuadSettings,
                      block: float, breakpoints=()) -> float:
    """Sum of adaptive quadratures over blocks of bounded width.

    Keeps the per-call subdivision need bounded for integrands that
    oscillate with a fixed period over a long range.
    """
    if b <= a:
        return 0.0
    if b - a <= 1.5 * block:
        return integrate_finite(f, a, b, settings,
                                breakpoints=breakpoints).value
    total_val = 0.0
    lo = a
    while lo < b:
        hi = min(lo + block, b)
        pts = [v for v in breakpoints if lo < v < hi]
        total_val += integrate_finite(f, lo, hi, settings,
                                      breakpoints=pts).value
        lo = hi
    return total_val


def _thickness_te_integral(T: float, params: SlabParams,
                           settings: QuadSettings, entropy: bool) -> float:
    weight = g if entropy else bose_log
    wp = params.omega_p
    W = max(40.0 * T, 8.0 * wp)

    def f(p: float) -> float:
        return p * weight(p / T) * delta_L(Channel.TE, p, p, params)

    lowcut = min(wp, W)
    val = integrate_finite(f, 0.0, lowcut, settings,
                           breakpoints=[T] if T < lowcut else []).value
    val += _blocked_integral(f, lowcut, W, settings, _osc_block(params),
                             breakpoints=[T])
    return val / (2.0 * math.pi ** 2)


def F_L_TE(T: float, params: SlabParams,
           settings: QuadSettings | None = None) -> float:
    """TE thickness free energy per unit area.

    F = (T / 2 pi^2) Int_0^inf p blog(p/T) delta_L_TE(p) dp.  Finite
    without subtraction; tends to -2 pi^2 T^4 / (45 omega_p
    (e^{2 omega_p L} - 1)) at low temperature and to a linear-in-T
    plateau (coefficient given by ``slab_constant_d``) at high
    temperature.  Vanishes for L -> inf.
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    return T * _thickness_te_integral(T, params, settings, entropy=False)


def h_L(omega: float, params: SlabParams,
        settings: QuadSettings | None = None) -> float:
    """Momentum moment Int_0^omega p delta_L_TM(p, omega) dp.

    Inner integral of the TM thickness part, evaluated with a tightened
    relative tolerance (1e-10) so the outer frequency integrals can
    target 1e-8.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    settings = (settings or DEFAULT_SETTINGS).with_tols(rel_tol=1e-10)
    wp = params.omega_p

    def f(p: float) -> float:
        return p * delta_L(Channel.TM, p, omega, params)

    lowcut = min(omega, wp)
    val = integrate_finite(f, 0.0, lowcut, settings).value
    if omega > wp:
        val += _blocked_integral(f, wp, omega, settings, _osc_block(params))
    return val


def _thickness_tm_integral(T: float, params: SlabParams,
                           settings: QuadSettings, entropy: bool) -> float:
    outer = settings.with_tols(rel_tol=1e-8)
    wp = params.omega_p
    # h_L decays fast enough that frequencies beyond ~60 omega_p are
    # negligible at every temperature; the thermal factor cuts earlier
    # when 40 T is smaller.
    W = min(40.0 * T, 60.0 * wp)

    if entropy:
        def f(w: float) -> float:
            return w * bose_kernel(w / T) * h_L(w, params, settings)
    else:
        def f(w: float) -> float:
            return bose_occupation(w / T) * h_L(w, params, settings)

    lowcut = min(wp, W)
    val = integrate_finite(f, 0.0, lowcut, outer,
                           breakpoints=[T] if T < lowcut else []).value
    val += _blocked_integral(f, lowcut, W, outer, _osc_block(params),
                             breakpoints=[T])
    return val


def F_L_TM(T: float, params: SlabParams,
           settings: QuadSettings | None = None) -> float:
    """TM thickness free energy per unit area.

    F = -(1/2 pi^2) Int_0^inf n(omega/T) h_L(omega) d omega (note: no
    omega factor; it is consumed by the momentum moment).  Low-T limit
    -2 pi^2 T^4 / (15 omega_p (e^{2 omega_p L} - 1)), three times the TE
    thickness part.
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    return -_thickness_tm_integral(T, params, settings,
                                   entropy=False) / (2.0 * math.pi ** 2)


def S_L(ch: str, T: float, params: SlabParams,
        settings: QuadSettings | None = None) -> float:
    """Thickness entropy of one channel (-dF/dT); no subtraction needed.

    The TE part settles on the plateau
    -slab_constant_d * omega_p^2 > 0 at high temperature.
    """
    Channel.validate(ch)
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    if ch == Channel.TE:
        return _thickness_te_integral(T, params, settings, entropy=True)
    return _thickness_tm_integral(
        T, params, settings, entropy=True) / (2.0 * math.pi ** 2 * T * T)


def slab_constant_d(settings: QuadSettings | None = None,
                    route: str = "TE") -> float:
    """High-temperature linear coefficient of the thickness part.

    d = (1/2 pi^2) Int_0^inf p log(p) delta_L_TE(p) dp at
    omega_p = L = 1, so that F_L_TE -> d T at high temperature (the
    T log T coefficient vanishes, see ``thickness_tlogt_coefficient``).
    The equivalent TM route integrates the frequency moment:
    d = -(1/2 pi^2) Int_0^inf h_L(omega)/omega d omega.
    """
    settings = settings or DEFAULT_SETTINGS
    params = SlabParams(omega_p=1.0, L=1.0)
    if route == "TM":
        def f(w: float) -> float:
            return h_L(w, params, settings) / w

        total_val = 0.0
        for lo, hi, lim in ((0.0, 1.0, 2000), (1.0, 10.0, 5000),
                            (10.0, 60.0, 20000)):
            piece = QuadSettings(abs_tol=settings.abs_tol,
                                 rel_tol=1e-8,
                                 max_subdivisions=lim,
                                 error_tracker=settings.error_tracker)
            total_val += integrate_finite(f, lo, hi, piece).value
        return -total_val / (2.0 * math.pi ** 2)
    if route != "TE":
        raise ValueError(f"route must be 'TE' or 'TM', got {route!r}")

    def f(p: float) -> float:
        return p * math.log(p) * delta_L(Channel.TE, p, p, params)

    total_val = 0.0
    for lo, hi, lim in ((0.0, 1.0, 500), (1.0, 50.0, 5000),
                        (50.0, 2000.0, 20000)):
        piece = QuadSettings(abs_tol=settings.abs_tol,
                             rel_tol=settings.rel_tol,
                             max_subdivisions=lim,
                             error_tracker=settings.error_tracker)
        total_val += integrate_finite(f, lo, hi, piece).value
    return total_val / (2.0 * math.pi ** 2)


def thickness_tlogt_coefficient(params: SlabParams,
                                settings: QuadSettings | None = None,
                                ) -> float:
    """Would-be T log T coefficient of F_L_TE: -(1/2 pi^2) Int p delta_L dp.

    Numerically indistinguishable from zero (the thickness part carries
    no T log T term); exposed so the vanishing can be reported rather
    than assumed.
    """
    settings = settings or DEFAULT_SETTINGS

    def f(p: float) -> float:
        return p * delta_L(Channel.TE, p, p, params)

    wp = params.omega_p
    val = integrate_finite(f, 0.0, wp, settings).value
    big = QuadSettings(abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
                       max_subdivisions=20000,
                       error_tracker=settings.error_tracker)
    val += integrate_finite(f, wp, 2000.0 * wp, big).value
    return -val / (2.0 * math.pi ** 2)


def _branch_weight(omega: float, params: SlabParams) -> float:
    """Subtracted branch-cut weight of the optical-path part.

    omega_p^2/2 - omega^2 below omega_p;
    omega sqrt(omega^2 - omega_p^2) - omega^2 + omega_p^2/2 above,
    evaluated cancellation-free (-> -omega_p^4 / (8 omega^2))."""
    wp = params.omega_p
    if omega < wp:
        return 0.5 * wp * wp - omega * omega
    r = (wp / omega) ** 2
    s = math.sqrt(max(1.0 - r, 0.0))
    return -0.5 * wp ** 4 / (omega * omega * (1.0 + s) ** 2)


def _exp_integral(T: float, params: SlabParams, settings: QuadSettings,
                  entropy: bool) -> float:
    weight = g if entropy else bose_log
    wp = params.omega_p
    W = max(40.0 * T, 8.0 * wp)
    pts = [v for v in (wp, T) if 0.0 < v < W]
    return integrate_finite(
        lambda w: _branch_weight(w, params) * weight(w / T),
        0.0, W, settings, breakpoints=pts).value


_EXP_VALIDATED: set[tuple[float, float]] = set()


def validate_exp_part(params: SlabParams,
                      settings: QuadSettings | None = None,
                      rel_tol: float = 1e-6) -> None:
    """Hard consistency check of the optical-path closed form.

    Compares the closed (branch-weight) route against the defining
    double integral at T = omega_p, once per (omega_p, L); raises on
    disagreement.  The defining integral is authoritative on signs.
    """
    key = (params.omega_p, params.L)
    if key in _EXP_VALIDATED:
        return
    settings = settings or DEFAULT_SETTINGS
    T = params.omega_p
    closed = (params.L * T * _exp_integral(T, params, settings, False)
              / (2.0 * math.pi ** 2)
              + params.omega_p ** 2 * params.L * T * T / 24.0)
    defining = F_exp_defining(T, params, settings)
    if abs(closed - defining) > rel_tol * max(abs(defining), 1e-12):
        raise QuadratureError(
            "optical-path closed form disagrees with its defining "
            f"integral at T={T}: {closed!r} vs {defining!r}"
        )
    _EXP_VALIDATED.add(key)


def F_exp_subtr(T: float, params: SlabParams,
                settings: QuadSettings | None = None) -> float:
    """Optical-path free energy with its T^2 growth removed.

    F = (L T / 2 pi^2) Int_0^inf w(omega) blog(omega/T) d omega over the
    subtracted branch weight w; the weight integrates to zero, so no
    T log T term arises and the subtracted entropy saturates at
    omega_p^3 L / (12 pi).  The closed route is hard-checked against the
    defining double integral once per (omega_p, L).
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    validate_exp_part(params, settings)
    return (params.L * T * _exp_integral(T, params, settings, False)
            / (2.0 * math.pi ** 2))


def F_exp(T: float, params: SlabParams,
          settings: QuadSettings | None = None) -> float:
    """Raw optical-path (exponential-tail) free energy per unit area.

    Equals the subtracted form plus omega_p^2 L T^2 / 24; tends to the
    black-body-like + (pi^2/90) L T^4 as T -> 0.
    """
    return (F_exp_subtr(T, params, settings)
            + params.omega_p ** 2 * params.L * T * T / 24.0)


def S_exp_subtr(T: float, params: SlabParams,
                settings: QuadSettings | None = None) -> float:
    """Subtracted optical-path entropy; -> omega_p^3 L / (12 pi)."""
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    validate_exp_part(params, settings)
    return (params.L * _exp_integral(T, params, settings, True)
            / (2.0 * math.pi ** 2))


def S_exp(T: float, params: SlabParams,
          settings: QuadSettings | None = None) -> float:
    """Raw optical-path entropy (-dF_exp/dT)."""
    return (S_exp_subtr(T, params, settings)
            - params.omega_p ** 2 * params.L * T / 12.0)


def F_exp_defining(T: float, params: SlabParams,
                   settings: QuadSettings | None = None) -> float:
    """Optical-path free energy from the defining double integral.

    Uses d delta/dp = L (p/q - 1) above omega_p and -L below; the
    singular piece is integrated in the internal momentum q, where it is
    smooth.  Cross-check only.
    """
    _check_T(T)
    settings = settings or DEFAULT_SETTINGS
    wp = params.omega_p

    def inner(k: float) -> float:
        i1 = integrate_semiinf(
            lambda p: bose_log(math.hypot(p, k) / T), 0.0, settings,
            scale=max(T, wp)).value
        i2 = integrate_semiinf(
            lambda q: bose_log(math.sqrt(q * q + wp * wp + k * k) / T),
            0.0, settings, scale=max(T, wp)).value
        return i2 - i1

    val = integrate_semiinf(lambda k: k * inner(k), 0.0, settings,
                            scale=max(T, wp)).value
    return params.L * T * val / (2.0 * math.pi ** 2)


def _mode_function(omega: float, k: float, params: SlabParams) -> float:
    """Slab plasmon mode function: 2 eps eta gamma + (eps^2 eta^2 +
    gamma^2) tanh(gamma L); pole-free on 0 < omega < min(k, wp/sqrt 2)."""
    eps = epsilon(omega, params)
    eta = math.sqrt(k * k - omega * omega)
    gam = math.sqrt(k * k + params.omega_p ** 2 - omega * omega)
    return (2.0 * eps * eta * gam
            + (eps * eps * eta * eta + gam * gam)
            * math.tanh(gam * params.L))


def single_surface_mode(k: float, params: SlabParams) -> float:
    """Surface mode of a single interface: the L -> inf limit.

    omega^2 = omega_p^2/2 + k^2 - sqrt(k^4 + omega_p^4/4); approaches
    omega_p/sqrt(2) from below as k grows.
    """
    wp = params.omega_p
    if k <= 0.0:
        raise ValueError(f"k must be positive, got {k}")
    w2 = 0.5 * wp * wp + k * k - math.sqrt(k ** 4 + 0.25 * wp ** 4)
    return math.sqrt(w2)


def plasmon_dispersion(k: float, params: SlabParams,
                       x_tol: float = 1e-10) -> float:
    """Guided TM surface mode (slab plasmon) frequency at momentum k.

    The mode function has exactly two roots on (0, min(k, omega_p/sqrt 2))
    for finite thickness: the reflection amplitude |rho| = (x + gamma) /
    (x - gamma), with x = |eps| eta, rises monotonically in omega while
    the thickness factor e^{gamma L} falls, so each side of the crossing
    point x = gamma carries one root.  At that crossing the mode function
    equals 2 gamma^2 (tanh(gamma L) - 1) < 0, which gives a guaranteed
    interior point: bisect |eps| eta - gamma for the crossing, then
    bracket downward to the lower root.  Uniform seeding cannot do this;
    at small k L both roots hug the light line within ~ k^3/omega_p^2.

    When tanh(gamma L) is saturated to 1 in floating point (large L) the
    interior point degenerates and the two roots merge pairwise into the
    single-surface mode, which is then returned in closed form.

    The returned branch is the lower (antisymmetric) one when the
    thickness splits the mode in two.

    NOTE: this mode is not included in the thermodynamic totals.
    """
    if k <= 0.0:
        raise ValueError(f"k must be positive, got {k}")
    wp = params.omega_p
    hi = min(k, wp / math.sqrt(2.0)) * (1.0 - 1e-12)

    def fn(w: float) -> float:
        return _mode_function(w, k, params)

    def excess(w: float) -> float:
        eta = math.sqrt(k * k - w * w)
        gam = math.sqrt(k * k + wp * wp - w * w)
        return -epsilon(w, params) * eta - gam

    lo = hi * 1e-6
    while excess(lo) <= 0.0 and lo > hi * 1e-200:
        lo *= 1e-6
    if excess(lo) > 0.0 and excess(hi) < 0.0:
        w_hat = find_root_bracketed(excess, lo, hi, x_tol=1e-15 * hi)
        if fn(w_hat) < 0.0:
            a = 0.5 * w_hat
            for _ in range(400):
                if fn(a) > 0.0:
                    return find_root_bracketed(fn, a, w_hat, x_tol=x_tol)
                a *= 0.5
    gam_min = math.sqrt(k * k + wp * wp - hi * hi)
    if math.tanh(gam_min * params.L) >= 1.0 - 1e-12:
        return single_surface_mode(k, params)
    raise QuadratureError(
        f"no slab plasmon bracket found at k={k} "
        f"(omega_p={wp}, L={params.L})"
    )


def plasmon_mode_residual(omega: float, k: float,
                          params: SlabParams) -> float:
    """|1 - rho_TM^2 e^{2iqL}| at evanescent momenta; ~0 on the mode."""
    eps = epsilon(omega, params)
    eta = math.sqrt(k * k - omega * omega)
    gam = math.sqrt(k * k + params.omega_p ** 2 - omega * omega)
    rho = (eps * eta - gam) / (eps * eta + gam)
    return abs(1.0 - rho * rho * math.exp(-2.0 * gam * params.L))


def subtraction_spec(part: str, params: SlabParams) -> SubtractionSpec:
    """High-temperature terms removable from a raw slab part."""
    wp, L = params.omega_p, params.L
    if part == "s_TE":
        return SubtractionSpec(c3=-ZETA3 / (2.0 * math.pi), c2=0.0)
    if part == "s_TM":
        return SubtractionSpec(c3=-ZETA3 / (2.0 * math.pi),
                               c2=(4.0 - math.pi) * wp / 24.0)
    if part in ("L_TE", "L_TM"):
        return SubtractionSpec()
    if part == "exp":
        return SubtractionSpec(c3=0.0, c2=wp * wp * L / 24.0)
    raise ValueError(f"unknown slab part {part!r}; have {PART_NAMES}")


@dataclass(frozen=True)
class SlabBreakdown:
    """Per-part slab thermodynamics at one temperature.

    Fields hold the subtracted free energies and entropies where a
    subtraction applies (surface and optical-path parts) and the plain
    values for the thickness parts, which need none.  ``point`` carries
    the full record.  The slab plasmon is intentionally absent.
    """

    F_s_TE: float
    F_s_TM: float
    F_L_TE: float
    F_L_TM: float
    F_exp: float
    S_s_TE: float
    S_s_TM: float
    S_L_TE: float
    S_L_TM: float
    S_exp: float
    point: ThermoPoint

    @property
    def F_total(self) -> float:
        return (self.F_s_TE + self.F_s_TM + self.F_L_TE + self.F_L_TM
                + self.F_exp)

    @property
    def S_total(self) -> float:
        return (self.S_s_TE + self.S_s_TM + self.S_L_TE + self.S_L_TM
                + self.S_exp)


def total(T: float, params: SlabParams,
          settings: QuadSettings | None = None) -> SlabBreakdown:
    """All slab parts at one temperature.

    Parts: s_TE, s_TM (surface), L_TE, L_TM (thickness), exp
    (optical path).  The slab plasmon is intentionally not included.
    """
    settings = settings or DEFAULT_SETTINGS
    raw = {
        "s_TE": (F_s_TE(T, params, settings), S_s_TE(T, params, settings)),
        "s_TM": (F_s_TM(T, params, settings), S_s_TM(T, params, settings)),
        "L_TE": (F_L_TE(T, params, settings),
                 S_L(Channel.TE, T, params, settings)),
        "L_TM": (F_L_TM(T, params, settings),
                 S_L(Channel.TM, T, params, settings)),
        "exp": (F_exp(T, params, settings), S_exp(T, params, settings)),
    }
    parts = []
    for name in PART_NAMES:
        F, S = raw[name]
        spec = subtraction_spec(name, params)
        parts.append(PartThermo(name, F, S, spec.free_energy(F, T),
                                spec.entropy(S, T)))
    point = ThermoPoint(T, tuple(parts))
    sub = {name: point.part(name) for name in PART_NAMES}
    return SlabBreakdown(
        F_s_TE=sub["s_TE"].free_energy_subtr,
        F_s_TM=sub["s_TM"].free_energy_subtr,
        F_L_TE=sub["L_TE"].free_energy_subtr,
        F_L_TM=sub["L_TM"].free_energy_subtr,
        F_exp=sub["exp"].free_energy_subtr,
        S_s_TE=sub["s_TE"].entropy_subtr,
        S_s_TM=sub["s_TM"].entropy_subtr,
        S_L_TE=sub["L_TE"].entropy_subtr,
        S_L_TM=sub["L_TM"].entropy_subtr,
        S_exp=sub["exp"].entropy_subtr,
        point=point,
    )


def surface_te_channel(params: SlabParams) -> ScatteringChannel:
    """TE surface part as a generic scattering channel (cross-checks).

    The phase derivative is 2/gamma below omega_p and zero above; the
    inverse square-root endpoint is integrable and flagged as a
    breakpoint.
    """
    wp = params.omega_p

    def delta(p: float, k: float) -> float:
        return delta_s(Channel.TE, p, math.hypot(p, k), params)

    def ddelta(p: float, k: float) -> float:
        if p >= wp:
            return 0.0
        return 2.0 / _gamma(p, params)

    return ScatteringChannel(
        name="slab-s-TE",
        phase_shift=delta,
        phase_shift_deriv=ddelta,
        p_breakpoints=lambda k: (wp,),
        fd_scale=wp,
    )


def _check_T(T: float) -> None:
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
