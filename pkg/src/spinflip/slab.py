"""Spin-flip rate of an atom at height z above a slab of thickness H.

The rate splits into the free-space part and a surface-induced part built
from two orientation integrals I_par and I_perp.  Each integral has a
propagating piece over x in [0, 2kz] (oscillatory, exp(ix)) and an
evanescent piece over x in [0, inf) (damped, exp(-x), with the scattering
coefficients evaluated at ix).  Only the real part of the bracket survives
in the rate; for the evanescent piece Re{(1/i) Z} = Im{Z}, and that
imaginary channel is ~12 orders of magnitude smaller than the discarded
real channel, so the evanescent integrand is reduced to its imaginary part
*before* quadrature.  Integrating the complex value and taking Im at the
end would put the adaptive error budget on the wrong component.

Finite slabs are handled by the multiple-reflection coefficients

    C(x) = r (1 - e^{ixH/z}) / (1 - r^2 e^{ixH/z}),

a half-space by their limit C = r (the evanescent exponential decays, and
for a half-space there is no back reflection).  The half-space is a
distinct geometry variant rather than a huge H so the exponent cannot
overflow.  1 - e^w is evaluated by series for small |w| to avoid
cancellation when H/z is small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .constants import CODATA2018, PhysicalConstants, TransitionSpec, thermal_occupation
from .errors import DomainError, InternalConsistencyError, SingularityError
from .materials import ComplexConductivity, characteristic_lengths
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    integrate_finite,
    integrate_semi_infinite,
    sqrt_upper,
)

__all__ = [
    "Geometry",
    "RateResult",
    "AnalyticValidity",
    "fresnel_rp",
    "fresnel_rs",
    "scattering_cn",
    "scattering_cm",
    "integral_parallel",
    "integral_perp",
    "gamma_free",
    "gamma_slab",
    "total_rate",
    "analytic_tau_superconductor",
    "analytic_tau_normal",
]

HALF_SPACE = math.inf


@dataclass(frozen=True)
class Geometry:
    """Atom-surface distance z, slab thickness H (inf = half-space), wavenumber k."""

    z: float
    H: float
    k: float

    def __post_init__(self):
        if not (math.isfinite(self.z) and self.z > 0):
            raise DomainError("atom-surface distance z must be positive and finite")
        if math.isnan(self.H) or self.H < 0:
            raise DomainError("thickness H must be >= 0 or inf (half-space)")
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError("wavenumber k must be positive and finite")

    @property
    def is_half_space(self) -> bool:
        return math.isinf(self.H)

    @property
    def kz(self) -> float:
        return self.k * self.z


@dataclass(frozen=True)
class RateResult:
    gamma_free: float        # free-space rate [1/s]
    i_par: float             # parallel orientation integral
    i_perp: float            # perpendicular orientation integral
    gamma_slab: float        # surface-induced rate [1/s]
    occupation_factor: float  # n + 1
    gamma_total: float       # (gamma_free + gamma_slab) * (n + 1) [1/s]
    tau: float               # 1/gamma_total [s]


@dataclass(frozen=True)
class AnalyticValidity:
    """Checks behind a closed-form lifetime, each with a factor-10 margin."""

    lambda_vs_delta: Optional[bool]      # lambda_L << delta
    lambda_vs_z: Optional[bool]          # lambda_L << z
    z_vs_wavelength: Optional[bool]      # z << free-space wavelength
    delta_vs_z: Optional[bool] = None    # delta << z (normal-metal form)

    @property
    def all_satisfied(self) -> bool:
        return all(v for v in (self.lambda_vs_delta, self.lambda_vs_z,
                               self.z_vs_wavelength, self.delta_vs_z)
                   if v is not None)


def _check_eps(eps: complex) -> complex:
    eps = complex(eps)
    if not (math.isfinite(eps.real) and math.isfinite(eps.imag)):
        raise DomainError("permittivity must be finite")
    if eps.imag < 0:
        raise DomainError("passive media require Im(eps) >= 0")
    if eps.imag == 0 and eps.real < 1:
        raise DomainError("lossless media require eps >= 1")
    return eps


def _medium_root(x, eps: complex, geom: Geometry):
    """sqrt((2kz)^2 (eps - 1) + x^2) on the decaying branch (Im >= 0)."""
    tkz = 2.0 * geom.kz
    return sqrt_upper(tkz * tkz * (eps - 1.0) + np.asarray(x, dtype=complex) ** 2)


def fresnel_rp(x, eps: complex, geom: Geometry):
    """p-polarization reflection coefficient; x may be complex (ix branch)."""
    eps = _check_eps(eps)
    x = np.asarray(x, dtype=complex)
    w = _medium_root(x, eps, geom)
    den = eps * x + w
    if np.any(den == 0):
        raise SingularityError("vanishing denominator in r_p")
    r = (eps * x - w) / den
    return complex(r) if r.ndim == 0 else r


def fresnel_rs(x, eps: complex, geom: Geometry):
    """s-polarization reflection coefficient; x may be complex (ix branch)."""
    eps = _check_eps(eps)
    x = np.asarray(x, dtype=complex)
    w = _medium_root(x, eps, geom)
    den = x + w
    if np.any(den == 0):
        raise SingularityError("vanishing denominator in r_s")
    r = (x - w) / den
    return complex(r) if r.ndim == 0 else r


def _one_minus_exp(w):
    """1 - exp(w), series for small |w| to keep relative accuracy."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-4
    series = -(w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0))))
    with np.errstate(over="ignore"):
        direct = 1.0 - np.exp(np.where(small, 0.0, w))
    return np.where(small, series, direct)


def _slab_coefficient(r, x, geom: Geometry):
    if geom.is_half_space:
        return r
    if geom.H == 0.0:
        return np.zeros_like(r)
    w = 1j * np.asarray(x, dtype=complex) * (geom.H / geom.z)
    with np.errstate(over="ignore", invalid="ignore"):
        e = np.exp(w)
    num = _one_minus_exp(w)
    den = 1.0 - r * r * e
    if np.any(np.abs(den) < 1e-14):
        raise SingularityError("resonant slab denominator |1 - r^2 e^{ixH/z}| < 1e-14")
    return r * num / den


def scattering_cn(x, eps: complex, geom: Geometry):
    """Multiple-reflection coefficient for p-polarized (N) waves."""
    return _slab_coefficient(fresnel_rp(x, eps, geom), x, geom)


def scattering_cm(x, eps: complex, geom: Geometry):
    """Multiple-reflection coefficient for s-polarized (M) waves."""
    return _slab_coefficient(fresnel_rs(x, eps, geom), x, geom)


def _surface_integrals(eps: complex, geom: Geometry,
                       settings: QuadratureSettings) -> Tuple[float, float]:
    eps = _check_eps(eps)
    if eps == 1.0 or geom.H == 0.0:
        return 0.0, 0.0
    tkz = 2.0 * geom.kz
    inv_tkz2 = 1.0 / (tkz * tkz)

    def finite_par(x):
        xc = x.astype(complex)
        cn = scattering_cn(xc, eps, geom)
        cm = scattering_cm(xc, eps, geom)
        return np.exp(1j * x) * (cn - (x * x * inv_tkz2) * cm)

    def finite_perp(x):
        xc = x.astype(complex)
        cm = scattering_cm(xc, eps, geom)
        return np.exp(1j * x) * (1.0 - x * x * inv_tkz2) * cm

    def evanescent_par(t):
        arg = 1j * t
        cn = scattering_cn(arg, eps, geom)
        cm = scattering_cm(arg, eps, geom)
        return np.exp(-t) * np.imag(cn + (t * t * inv_tkz2) * cm)

    def evanescent_perp(t):
        arg = 1j * t
        cm = scattering_cm(arg, eps, geom)
        return np.exp(-t) * np.imag((1.0 + t * t * inv_tkz2) * cm)

    width = max(1.0, tkz)
    fin_par = integrate_finite(finite_par, 0.0, tkz, settings)
    ev_par = integrate_semi_infinite(evanescent_par, settings, first_panel_width=width)
    fin_perp = integrate_finite(finite_perp, 0.0, tkz, settings)
    ev_perp = integrate_semi_infinite(evanescent_perp, settings, first_panel_width=width)

    i_par = 3.0 / (16.0 * geom.kz) * (fin_par.real + ev_par.real)
    i_perp = 3.0 / (8.0 * geom.kz) * (fin_perp.real + ev_perp.real)
    if not (math.isfinite(i_par) and math.isfinite(i_perp)):
        raise InternalConsistencyError("surface integrals produced non-finite values")
    return i_par, i_perp


def integral_parallel(eps: complex, geom: Geometry,
                      settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Orientation integral for spin components parallel to the surface."""
    return _surface_integrals(eps, geom, settings)[0]


def integral_perp(eps: complex, geom: Geometry,
                  settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Orientation integral for the spin component normal to the surface."""
    return _surface_integrals(eps, geom, settings)[1]


def _rate_prefactor(spec: TransitionSpec, constants: PhysicalConstants) -> float:
    """mu0 (muB gS)^2 k^3 / (3 pi hbar), the orientation-independent scale."""
    k = spec.omega / constants.c
    moment = constants.muB * constants.gS
    return constants.mu0 * moment * moment * k**3 / (3.0 * math.pi * constants.hbar)


def gamma_free(spec: TransitionSpec, constants: PhysicalConstants = CODATA2018) -> float:
    """Free-space spin-flip rate: prefactor times the total spin weight S^2."""
    return _rate_prefactor(spec, constants) * spec.s_total2


def gamma_slab(spec: TransitionSpec, i_par: float, i_perp: float,
               constants: PhysicalConstants = CODATA2018) -> float:
    """Surface-induced rate 2 gamma_free [(sx2+sy2) I_par + sz2 I_perp] / S^2.

    The spin components enter as orientation weights normalized by S^2; the
    overall magnitude S^2 is already carried by gamma_free.  With the
    default orientation (sx2 = 0, sy2 = sz2) this reduces to
    gamma_free * (I_par + I_perp).
    """
    if not (math.isfinite(i_par) and math.isfinite(i_perp)):
        raise DomainError("orientation integrals must be finite")
    s2 = spec.s_total2
    weight = ((spec.sx2 + spec.sy2) * i_par + spec.sz2 * i_perp) / s2
    return 2.0 * gamma_free(spec, constants) * weight


def total_rate(spec: TransitionSpec, geom: Geometry, eps: complex, T: float,
               settings: QuadratureSettings = DEFAULT_SETTINGS,
               constants: PhysicalConstants = CODATA2018) -> RateResult:
    """Total spin-flip rate and lifetime at slab temperature T."""
    if T < 0:
        raise DomainError("temperature must be non-negative")
    g0 = gamma_free(spec, constants)
    if geom.H == 0.0:
        i_par, i_perp = 0.0, 0.0
    else:
        i_par, i_perp = _surface_integrals(eps, geom, settings)
    g_slab = gamma_slab(spec, i_par, i_perp, constants)
    nbar1 = thermal_occupation(spec.nu, T, constants) + 1.0
    g_tot = (g0 + g_slab) * nbar1
    return RateResult(gamma_free=g0, i_par=i_par, i_perp=i_perp,
                      gamma_slab=g_slab, occupation_factor=nbar1,
                      gamma_total=g_tot, tau=1.0 / g_tot)


_ANALYTIC_COEFF = (3.0 / 4.0) ** 3


def analytic_tau_superconductor(spec: TransitionSpec, geom: Geometry,
                                sigma: ComplexConductivity, T: float,
                                constants: PhysicalConstants = CODATA2018,
                                ) -> Tuple[float, AnalyticValidity]:
    """Closed-form bulk lifetime for an inductive response (sigma2 > 0).

    tau0/tau = (n+1) [1 + (3/4)^3 sqrt(eps0 w) sigma1 / sigma2^(3/2) / (kz)^4].
    Valid for lambda_L << delta and lambda_L << z << wavelength; the checks
    are reported (with factor-10 margins), never enforced.
    """
    if sigma.sigma2 <= 0:
        raise DomainError("superconducting closed form requires sigma2 > 0")
    omega = spec.omega
    kz = geom.kz
    surface = (_ANALYTIC_COEFF * math.sqrt(constants.eps0 * omega)
               * sigma.sigma1 / sigma.sigma2**1.5 / kz**4)
    nbar1 = thermal_occupation(spec.nu, T, constants) + 1.0
    tau = 1.0 / (gamma_free(spec, constants) * nbar1 * (1.0 + surface))
    lam, delta = characteristic_lengths(sigma, omega, constants)
    wavelength = 2.0 * math.pi / geom.k
    validity = AnalyticValidity(
        lambda_vs_delta=None if delta is None else (lam <= delta / 10.0),
        lambda_vs_z=lam <= geom.z / 10.0,
        z_vs_wavelength=geom.z <= wavelength / 10.0,
    )
    return tau, validity


def analytic_tau_normal(spec: TransitionSpec, geom: Geometry, sigma1: float,
                        T: float, constants: PhysicalConstants = CODATA2018,
                        ) -> Tuple[float, AnalyticValidity]:
    """Closed-form bulk lifetime for a purely dissipative response.

    tau0/tau = (n+1) [1 + (3/4)^3 sqrt(2 eps0 w / sigma1) / (kz)^4],
    valid for delta << z (reported, not enforced).
    """
    if sigma1 <= 0:
        raise DomainError("normal-metal closed form requires sigma1 > 0")
    omega = spec.omega
    surface = (_ANALYTIC_COEFF * math.sqrt(2.0 * constants.eps0 * omega / sigma1)
               / geom.kz**4)
    nbar1 = thermal_occupation(spec.nu, T, constants) + 1.0
    tau = 1.0 / (gamma_free(spec, constants) * nbar1 * (1.0 + surface))
    _, delta = characteristic_lengths(ComplexConductivity(sigma1, 0.0), omega, constants)
    wavelength = 2.0 * math.pi / geom.k
    validity = AnalyticValidity(
        lambda_vs_delta=None,
        lambda_vs_z=None,
        z_vs_wavelength=geom.z <= wavelength / 10.0,
        delta_vs_z=delta <= geom.z / 10.0,
    )
    return tau, validity
