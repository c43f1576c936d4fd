"""Optical conductivity and permittivity models apart from the BCS integrals.

Conventions: the complex conductivity is sigma = sigma1 + i*sigma2 with
sigma1 >= 0 (dissipation) and sigma2 > 0 for an inductive/superfluid
response.  The relative permittivity follows from

    eps(omega) = 1 - sigma2/(eps0*omega) + i*sigma1/(eps0*omega),

i.e. eps = 1 + i*sigma/(eps0*omega).  Characteristic lengths:
lambda_L = sqrt(1/(omega*mu0*sigma2)) and delta = sqrt(2/(omega*mu0*sigma1)).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .constants import CODATA2018, PhysicalConstants
from .errors import DomainError
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate_finite

__all__ = [
    "ComplexConductivity",
    "SuperconductorParams",
    "DrudeMetalParams",
    "NIOBIUM",
    "GOLD",
    "permittivity",
    "two_fluid_conductivity",
    "london_conductivity",
    "bloch_gruneisen_integral",
    "drude_scattering_rate",
    "drude_bg_permittivity",
    "ag_superfluid_fraction",
    "eliashberg_rescale",
    "characteristic_lengths",
]


@dataclass(frozen=True)
class ComplexConductivity:
    """sigma1 + i*sigma2 in (Ohm m)^-1."""

    sigma1: float
    sigma2: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma1) and math.isfinite(self.sigma2)):
            raise DomainError("conductivity components must be finite")
        if self.sigma1 < 0:
            raise DomainError("dissipative part sigma1 must be non-negative")

    @property
    def as_complex(self) -> complex:
        return complex(self.sigma1, self.sigma2)


@dataclass(frozen=True)
class SuperconductorParams:
    """Material parameters of a superconducting film.

    ``impurity_strength`` is the dimensionless hbar/(tau * Delta(0)) of the
    non-magnetic impurity scattering time tau; for the niobium defaults it
    equals pi*xi0/l.
    """

    Tc: float                 # critical temperature [K]
    lambdaL0: float           # London penetration depth at T=0 [m]
    sigma_n: float            # normal-state conductivity at Tc [(Ohm m)^-1]
    debye_energy: float       # Debye energy hbar*omega_D [J]
    impurity_strength: float  # hbar/(tau*Delta(0)), dimensionless
    xi0: float                # coherence length [m]
    mean_free_path: float     # electron mean free path [m]
    ZN: float = 1.0           # mass-renormalization factor, >= 1

    def __post_init__(self):
        positive = ("Tc", "lambdaL0", "sigma_n", "debye_energy",
                    "impurity_strength", "xi0", "mean_free_path")
        for name in positive:
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite")
        if not (math.isfinite(self.ZN) and self.ZN >= 1.0):
            raise DomainError("ZN must be finite and >= 1")

    def gap_zero(self, constants: PhysicalConstants = CODATA2018) -> float:
        """Zero-temperature gap Delta(0) = 3.53 kB Tc / 2 [J]."""
        return 3.53 * constants.kB * self.Tc / 2.0

    def impurity_tau(self, constants: PhysicalConstants = CODATA2018) -> float:
        """Impurity scattering time tau = hbar/(impurity_strength*Delta(0)) [s]."""
        return constants.hbar / (self.impurity_strength * self.gap_zero(constants))


@dataclass(frozen=True)
class DrudeMetalParams:
    """Drude metal with a Bloch-Grueneisen phonon scattering rate."""

    theta: float                    # Debye temperature [K]
    plasma_energy: float            # hbar*omega_p [J]
    bg_prefactor: float = 0.0847 * 1.602176634e-19  # scattering-rate coefficient [J]

    def __post_init__(self):
        for name in ("theta", "plasma_energy", "bg_prefactor"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite")


#: Niobium film parameters (Tc = 8.31 K, lambda_L(0) = 35 nm, sigma_n = 2e7,
#: hbar*omega_D = 25 meV, hbar/(tau*Delta0) = pi*xi0/l = 13.61, Z_N = 2.1).
NIOBIUM = SuperconductorParams(
    Tc=8.31,
    lambdaL0=35e-9,
    sigma_n=2e7,
    debye_energy=25e-3 * CODATA2018.eV,
    impurity_strength=13.61,
    xi0=39e-9,
    mean_free_path=9e-9,
    ZN=2.1,
)

#: Gold: theta = 175 K, hbar*omega_p = 9 eV.
GOLD = DrudeMetalParams(theta=175.0, plasma_energy=9.0 * CODATA2018.eV)


def permittivity(sigma: ComplexConductivity, omega: float,
                 constants: PhysicalConstants = CODATA2018) -> complex:
    """Relative permittivity eps = 1 - sigma2/(eps0 w) + i sigma1/(eps0 w)."""
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError("omega must be positive and finite")
    scale = 1.0 / (constants.eps0 * omega)
    return complex(1.0 - sigma.sigma2 * scale, sigma.sigma1 * scale)


def london_conductivity(params: SuperconductorParams, omega: float,
                        constants: PhysicalConstants = CODATA2018) -> float:
    """sigma_L = 1/(omega mu0 lambda_L(0)^2), the T=0 inductive response."""
    if omega <= 0:
        raise DomainError("omega must be positive")
    return 1.0 / (omega * constants.mu0 * params.lambdaL0**2)


def two_fluid_conductivity(T: float, params: SuperconductorParams, omega: float,
                           constants: PhysicalConstants = CODATA2018,
                           superfluid_fraction: Optional[float] = None) -> ComplexConductivity:
    """Two-fluid conductivity sigma1 = sigma_n sqrt(n_n/n0), sigma2 = sigma_L sqrt(n_s/n0).

    By default the normal fraction follows the Gorter-Casimir law
    n_n/n0 = (T/Tc)^4; an explicit ``superfluid_fraction`` overrides it
    (used for the impurity-suppressed superfluid density).  At and above Tc
    the material is fully normal: sigma = (sigma_n, 0).
    """
    if T < 0:
        raise DomainError("temperature must be non-negative")
    if T >= params.Tc:
        return ComplexConductivity(params.sigma_n, 0.0)
    if superfluid_fraction is None:
        n_n = min((T / params.Tc) ** 4, 1.0)
    else:
        if not (0.0 <= superfluid_fraction <= 1.0):
            raise DomainError("superfluid_fraction must lie in [0, 1]")
        n_n = 1.0 - superfluid_fraction
    n_s = 1.0 - n_n
    sigma_L = london_conductivity(params, omega, constants)
    return ComplexConductivity(params.sigma_n * math.sqrt(n_n),
                               sigma_L * math.sqrt(n_s))


def bloch_gruneisen_integral(upper: float,
                             settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """J(y) = int_0^y x^5 e^x/(e^x-1)^2 dx, with the limit capped at 200.

    Beyond y = 200 the integrand is below 1e-80 and J has reached its
    asymptote 5*4!*zeta(5) = 124.4313...; the cap avoids pointless work.
    """
    if upper < 0:
        raise DomainError("upper limit must be non-negative")
    y = min(upper, 200.0)
    if y == 0.0:
        return 0.0

    def integrand(x):
        # e^x/(e^x-1)^2 = e^-x/(1-e^-x)^2, overflow-free for large x
        e = np.exp(-x)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = x**5 * e / np.square(-np.expm1(-x))
        return np.where(x > 0, val, 0.0)

    return integrate_finite(integrand, 0.0, y, settings).real


def drude_scattering_rate(T: float, params: DrudeMetalParams,
                          constants: PhysicalConstants = CODATA2018,
                          settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Phonon-limited scattering rate nu(T) [1/s] (Bloch-Grueneisen)."""
    if T <= 0:
        raise DomainError("temperature must be positive")
    j = bloch_gruneisen_integral(params.theta / T, settings)
    energy = params.bg_prefactor * (T / params.theta) ** 5 * j
    return energy / constants.hbar


def drude_bg_permittivity(T: float, omega: float, params: DrudeMetalParams,
                          constants: PhysicalConstants = CODATA2018,
                          settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    """Drude permittivity with the Bloch-Grueneisen scattering rate.

    eps = 1 - wp^2/(w^2 + nu^2) + i nu wp^2 / (w (w^2 + nu^2)).
    """
    if omega <= 0:
        raise DomainError("omega must be positive")
    nu_sc = drude_scattering_rate(T, params, constants, settings)
    wp = params.plasma_energy / constants.hbar
    denom = omega * omega + nu_sc * nu_sc
    return complex(1.0 - wp * wp / denom,
                   nu_sc * wp * wp / (omega * denom))


def ag_superfluid_fraction(T: float, delta_T: float, params: SuperconductorParams,
                           constants: PhysicalConstants = CODATA2018) -> float:
    """Impurity-suppressed superfluid density n_s/n0, clamped to [0, 1].

    n_s/n0 = (pi*tau/hbar) * Delta(T) * tanh(Delta(T)/(2 kB T)); the
    dimensionless combination is Delta(T)/Delta(0) * pi/impurity_strength.
    The underlying approximation holds for tau*Delta(0)/hbar << 1 and can
    exceed 1 outside its regime, hence the clamp (sigma2 must not exceed
    the lambda_L(0) bound).
    """
    if T < 0:
        raise DomainError("temperature must be non-negative")
    if delta_T < 0:
        raise DomainError("gap energy must be non-negative")
    if delta_T == 0.0:
        return 0.0
    th = 1.0 if T == 0.0 else math.tanh(delta_T / (2.0 * constants.kB * T))
    frac = (math.pi / params.impurity_strength
            * (delta_T / params.gap_zero(constants)) * th)
    return min(max(frac, 0.0), 1.0)


def eliashberg_rescale(params: SuperconductorParams) -> SuperconductorParams:
    """Strong-coupling rescaling: sigma_n -> sigma_n/Z_N, tau -> tau/Z_N.

    Since impurity_strength is proportional to 1/tau it gets multiplied by
    Z_N.  All other fields are unchanged.
    """
    return dataclasses.replace(
        params,
        sigma_n=params.sigma_n / params.ZN,
        impurity_strength=params.impurity_strength * params.ZN,
    )


def characteristic_lengths(sigma: ComplexConductivity, omega: float,
                           constants: PhysicalConstants = CODATA2018,
                           ) -> Tuple[Optional[float], Optional[float]]:
    """(lambda_L, delta) in meters; a component is None where undefined.

    lambda_L requires sigma2 > 0, delta requires sigma1 > 0.
    """
    if omega <= 0:
        raise DomainError("omega must be positive")
    lam = None
    if sigma.sigma2 > 0:
        lam = math.sqrt(1.0 / (omega * constants.mu0 * sigma.sigma2))
    delta = None
    if sigma.sigma1 > 0:
        delta = math.sqrt(2.0 / (omega * constants.mu0 * sigma.sigma1))
    return lam, delta
