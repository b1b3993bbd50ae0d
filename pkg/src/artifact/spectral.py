"""Channel abstraction and thermodynamic bookkeeping.

A scattering geometry enters through one object per polarization
channel: its phase shift as a function of radial momentum p at fixed
transverse momentum k, optionally an analytic p-derivative, and
optionally a discrete surface-mode dispersion below the continuum.

``free_energy_defining`` and ``entropy_defining`` evaluate the defining
two-dimensional integrals directly from that data.  They are deliberately
slow and assumption-free; the model modules provide reduced one-dimensional
forms and use these as cross-checks.

The high-temperature expansion of a free energy per unit area,

    F(T) = c_T3 T^3 + c_T2 T^2 + c_TlogT T log T + c_T T + ...

maps term by term onto short-time heat-kernel coefficients of the
underlying spectral problem:

    a_1/2  = -4 pi^(3/2) c_T3 / zeta(3)
    a_1    = -24 c_T2
    a_3/2  = -(4 pi)^(3/2) c_TlogT

``extract_heat_kernel`` performs the fit and mapping per channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .numkernel import (
    DEFAULT_SETTINGS,
    AsymptoticFit,
    QuadSettings,
    bose_log,
    derivative_fd,
    fit_asymptotic,
    g,
    integrate_finite,
    integrate_semiinf,
)

__all__ = [
    "Channel",
    "ScatteringChannel",
    "SubtractionSpec",
    "PartThermo",
    "ThermoPoint",
    "ThermoCurve",
    "HeatKernelSet",
    "free_energy_defining",
    "entropy_defining",
    "subtract",
    "heat_kernel_from_expansion",
    "expansion_from_heat_kernel",
    "extract_heat_kernel",
    "validate_channel_derivative",
    "ZETA3",
    "ZETA5",
]

ZETA3 = 1.2020569031595943
ZETA5 = 1.0369277551433699


class Channel:
    """Polarization channel labels."""

    TE = "TE"
    TM = "TM"
    ALL = ("TE", "TM")

    @staticmethod
    def validate(ch: str) -> str:
        if ch not in Channel.ALL:
            raise ValueError(f"unknown channel {ch!r}; expected one of "
                             f"{Channel.ALL}")
        return ch


@dataclass(frozen=True)
class ScatteringChannel:
    """Scattering data of one polarization channel.

    Attributes
    ----------
    name : str
        Label used in reports ("TE", "TM", ...).
    phase_shift : callable
        delta(p, k), radial momentum p >= 0 at transverse momentum k.
    phase_shift_deriv : callable, optional
        Analytic d delta/dp; a central finite difference with step
        1e-6 * max(p, fd_scale) is used when absent.
    surface_mode : callable, optional
        Discrete mode frequency omega(k), defined for k >= k_min_surface.
    k_min_surface : float
        Lower edge of the surface-mode band.
    p_breakpoints : callable, optional
        Known non-smooth p values of the phase shift at given k,
        forwarded to the quadrature.
    fd_scale : float
        Momentum scale for the fallback finite-difference step.

    All callables must be safe to call concurrently.
    """

    name: str
    phase_shift: Callable[[float, float], float]
    phase_shift_deriv: Callable[[float, float], float] | None = None
    surface_mode: Callable[[float], float] | None = None
    k_min_surface: float = 0.0
    p_breakpoints: Callable[[float], tuple[float, ...]] | None = None
    fd_scale: float = 1.0

    def deriv(self, p: float, k: float) -> float:
        if self.phase_shift_deriv is not None:
            return self.phase_shift_deriv(p, k)
        h = 1e-6 * max(p, self.fd_scale)
        return derivative_fd(lambda q: self.phase_shift(q, k), p, h)


@dataclass(frozen=True)
class SubtractionSpec:
    """Removable high-temperature terms c3*T^3 + c2*T^2 of one part."""

    c3: float = 0.0
    c2: float = 0.0

    def free_energy(self, raw: float, T: float) -> float:
        return raw - self.c3 * T ** 3 - self.c2 * T ** 2

    def entropy(self, raw: float, T: float) -> float:
        return raw + 3.0 * self.c3 * T ** 2 + 2.0 * self.c2 * T


def subtract(raw: float, spec: SubtractionSpec, T: float,
             entropy: bool = False) -> float:
    """Remove the subtraction terms of ``spec`` from a raw value."""
    return spec.entropy(raw, T) if entropy else spec.free_energy(raw, T)


@dataclass(frozen=True)
class PartThermo:
    """Raw and subtracted thermodynamics of one model part."""

    name: str
    free_energy: float
    entropy: float
    free_energy_subtr: float
    entropy_subtr: float


@dataclass(frozen=True)
class ThermoPoint:
    """All parts of a model at one temperature; totals are exact sums."""

    T: float
    parts: tuple[PartThermo, ...]

    def part(self, name: str) -> PartThermo:
        for p in self.parts:
            if p.name == name:
                return p
        raise KeyError(f"no part named {name!r}; have "
                       f"{[p.name for p in self.parts]}")

    @property
    def free_energy_total(self) -> float:
        return sum(p.free_energy for p in self.parts)

    @property
    def entropy_total(self) -> float:
        return sum(p.entropy for p in self.parts)

    @property
    def free_energy_subtr_total(self) -> float:
        return sum(p.free_energy_subtr for p in self.parts)

    @property
    def entropy_subtr_total(self) -> float:
        return sum(p.entropy_subtr for p in self.parts)


@dataclass(frozen=True)
class ThermoCurve:
    """Thermodynamics sampled on a temperature grid."""

    points: tuple[ThermoPoint, ...]

    def temperatures(self) -> tuple[float, ...]:
        return tuple(pt.T for pt in self.points)

    def part_samples(self, name: str, entropy: bool = False,
                     subtracted: bool = False) -> list[tuple[float, float]]:
        out = []
        for pt in self.points:
            part = pt.part(name)
            if entropy:
                v = part.entropy_subtr if subtracted else part.entropy
            else:
                v = part.free_energy_subtr if subtracted else part.free_energy
            out.append((pt.T, v))
        return out


def free_energy_defining(ch: ScatteringChannel, T: float,
                         settings: QuadSettings | None = None) -> float:
    """Free energy per unit area from the defining double integral.

    F = (T / 2 pi) Int k dk [ blog(omega_s(k)/T)
          + (1/pi) Int dp blog(omega/T) d delta/dp ],   omega^2 = p^2 + k^2

    with blog(x) = log(1 - exp(-x)) and the first term present only on
    the surface-mode band.  Purely a cross-check: quadratic cost in the
    quadrature, no model-specific reductions.
    """
    return _defining(ch, T, settings, entropy=False)


def entropy_defining(ch: ScatteringChannel, T: float,
                     settings: QuadSettings | None = None) -> float:
    """Entropy per unit area from the defining double integral.

    Same structure as ``free_energy_defining`` with T*blog replaced by
    the entropy weight g.
    """
    return _defining(ch, T, settings, entropy=True)


def _defining(ch: ScatteringChannel, T: float,
              settings: QuadSettings | None, entropy: bool) -> float:
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    settings = settings or DEFAULT_SETTINGS
    weight = g if entropy else bose_log
    scale = max(T, ch.fd_scale)

    def continuum(k: float) -> float:
        def f(p: float) -> float:
            omega = math.hypot(p, k)
            return weight(omega / T) * ch.deriv(p, k)

        brk = ch.p_breakpoints(k) if ch.p_breakpoints is not None else ()
        # Phase derivatives can vary on scales far below `scale` (the
        # channel marks them via p_breakpoints); integrate the small-p
        # region on a log axis, where such layers are O(1) wide, and the
        # rest linearly.
        u_hi = math.log(scale)
        u_pts = sorted(math.log(b) for b in brk if 0.0 < b < scale)
        u_lo = min(u_pts[0] if u_pts else u_hi, u_hi - 5.0) - 35.0
        small = integrate_finite(lambda u: math.exp(u) * f(math.exp(u)),
                                 u_lo, u_hi, settings, breakpoints=u_pts)
        large = integrate_semiinf(f, scale, settings, scale=scale,
                                  breakpoints=[b for b in brk if b > scale])
        return (small.value + large.value) / math.pi

    total = integrate_semiinf(lambda k: k * continuum(k), 0.0, settings,
                              scale=scale).value

    if ch.surface_mode is not None:
        mode = ch.surface_mode

        def fs(k: float) -> float:
            return k * weight(mode(k) / T)

        total += integrate_semiinf(fs, ch.k_min_surface, settings,
                                   scale=scale).value

    pref = 1.0 / (2.0 * math.pi) if entropy else T / (2.0 * math.pi)
    return pref * total


def heat_kernel_from_expansion(c_t3: float, c_t2: float,
                               c_tlogt: float) -> tuple[float, float, float]:
    """Map free-energy expansion coefficients to (a_1/2, a_1, a_3/2)."""
    a_half = -4.0 * math.pi ** 1.5 * c_t3 / ZETA3
    a_one = -24.0 * c_t2
    a_three_half = -(4.0 * math.pi) ** 1.5 * c_tlogt
    return a_half, a_one, a_three_half


def expansion_from_heat_kernel(a_half: float, a_one: float,
                               a_three_half: float
                               ) -> tuple[float, float, float]:
    """Inverse of ``heat_kernel_from_expansion``."""
    c_t3 = -ZETA3 * a_half / (4.0 * math.pi ** 1.5)
    c_t2 = -a_one / 24.0
    c_tlogt = -a_three_half / (4.0 * math.pi) ** 1.5
    return c_t3, c_t2, c_tlogt


@dataclass(frozen=True)
class HeatKernelSet:
    """Heat-kernel coefficients per part, with fit diagnostics."""

    a_half: dict[str, float]
    a_one: dict[str, float]
    a_three_half: dict[str, float]
    fit_residuals: dict[str, float]
    fits: dict[str, AsymptoticFit]


def extract_heat_kernel(samples: Mapping[str, Sequence[tuple[float, float]]],
                        basis: Sequence[str] = ("T3", "T2", "TlogT", "T"),
                        ) -> HeatKernelSet:
    """Fit raw high-T free energies and map them to heat-kernel terms.

    Parameters
    ----------
    samples : mapping
        Part name -> (T, F_raw) samples on a high-temperature grid.
    basis : sequence of str
        Fit basis; must contain "T3", "T2" and "TlogT".

    Returns
    -------
    HeatKernelSet
    """
    for required in ("T3", "T2", "TlogT"):
        if required not in basis:
            raise ValueError(f"fit basis must contain {required!r}")
    a_half: dict[str, float] = {}
    a_one: dict[str, float] = {}
    a_three_half: dict[str, float] = {}
    resid: dict[str, float] = {}
    fits: dict[str, AsymptoticFit] = {}
    for name, data in samples.items():
        fit = fit_asymptotic(data, basis)
        ah, a1, a32 = heat_kernel_from_expansion(
            fit.coefficient("T3"), fit.coefficient("T2"),
            fit.coefficient("TlogT"))
        a_half[name] = ah
        a_one[name] = a1
        a_three_half[name] = a32
        resid[name] = fit.residual_norm
        fits[name] = fit
    return HeatKernelSet(a_half, a_one, a_three_half, resid, fits)


def validate_channel_derivative(ch: ScatteringChannel,
                                points: Sequence[tuple[float, float]],
                                tol: float = 1e-5) -> float:
    """Compare the analytic phase-shift derivative against differences.

    Returns the worst absolute deviation over the sample points; raises
    if it exceeds ``tol`` scaled by the local derivative size.
    """
    if ch.phase_shift_deriv is None:
        return 0.0
    worst = 0.0
    for p, k in points:
        analytic = ch.phase_shift_deriv(p, k)
        h = 1e-6 * max(p, ch.fd_scale)
        fd = derivative_fd(lambda q: ch.phase_shift(q, k), p, h)
        dev = abs(analytic - fd)
        worst = max(worst, dev)
        if dev > tol * max(1.0, abs(analytic)):
            raise AssertionError(
                f"phase-shift derivative mismatch at p={p}, k={k}: "
                f"analytic {analytic:.10e} vs fd {fd:.10e}"
            )
    return worst
