"""Closed set of material models a scan can select.

Every model maps a temperature to a complex conductivity and a relative
permittivity at the fixed evaluation frequency.  Superconducting models are
unified above Tc: sigma = (sigma_n, 0), i.e. the normal-state conductivity
held constant with no inductive part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import bcs, materials
from .constants import CODATA2018, PhysicalConstants
from .errors import DomainError
from .materials import ComplexConductivity, DrudeMetalParams, SuperconductorParams
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings

__all__ = [
    "TwoFluidGC",
    "AGTwoFluid",
    "MattisBardeenClean",
    "DirtyBCS",
    "DrudeBG",
    "FixedConductivity",
    "MaterialModel",
    "MODEL_TAGS",
    "build_model",
]


class _ModelBase:
    def permittivity(self, T: float) -> complex:
        return materials.permittivity(self.conductivity(T), self.omega, self.constants)

    @property
    def Tc(self) -> Optional[float]:
        params = getattr(self, "params", None)
        return getattr(params, "Tc", None)


@dataclass
class _SuperconductorModel(_ModelBase):
    params: SuperconductorParams
    omega: float
    settings: QuadratureSettings = DEFAULT_SETTINGS
    constants: PhysicalConstants = CODATA2018

    def __post_init__(self):
        if self.omega <= 0:
            raise DomainError("omega must be positive")
        self._gap_curve = None

    def gap_curve(self) -> bcs.GapCurve:
        if self._gap_curve is None:
            self._gap_curve = bcs.build_gap_curve(
                self.params, settings=self.settings, constants=self.constants)
        return self._gap_curve


@dataclass
class TwoFluidGC(_SuperconductorModel):
    """Two-fluid model with the Gorter-Casimir fractions n_n/n0 = (T/Tc)^4."""

    tag = "two_fluid_gc"

    def conductivity(self, T: float) -> ComplexConductivity:
        return materials.two_fluid_conductivity(T, self.params, self.omega, self.constants)


@dataclass
class AGTwoFluid(_SuperconductorModel):
    """Two-fluid model with the impurity-suppressed superfluid density."""

    tag = "ag_two_fluid"

    def conductivity(self, T: float) -> ComplexConductivity:
        if T >= self.params.Tc:
            return ComplexConductivity(self.params.sigma_n, 0.0)
        delta = self.gap_curve().delta_at(T)
        ns = materials.ag_superfluid_fraction(T, delta, self.params, self.constants)
        return materials.two_fluid_conductivity(
            T, self.params, self.omega, self.constants, superfluid_fraction=ns)


@dataclass
class MattisBardeenClean(_SuperconductorModel):
    """Microscopic clean-limit conductivity, scaled by sigma_n."""

    tag = "mb_clean"

    def conductivity(self, T: float) -> ComplexConductivity:
        if T >= self.params.Tc:
            return ComplexConductivity(self.params.sigma_n, 0.0)
        ratio = bcs.clean_conductivity(self.omega, T, self.params,
                                       gap=self.gap_curve(),
                                       settings=self.settings,
                                       constants=self.constants)
        return ComplexConductivity(self.params.sigma_n * ratio.real,
                                   self.params.sigma_n * ratio.imag)


@dataclass
class DirtyBCS(_SuperconductorModel):
    """Microscopic dirty-limit conductivity, scaled by sigma_L."""

    tag = "dirty_bcs"

    def conductivity(self, T: float) -> ComplexConductivity:
        if T >= self.params.Tc:
            return ComplexConductivity(self.params.sigma_n, 0.0)
        sigma_l = materials.london_conductivity(self.params, self.omega, self.constants)
        ratio = bcs.dirty_conductivity(self.omega, T, self.params,
                                       gap=self.gap_curve(),
                                       settings=self.settings,
                                       constants=self.constants)
        return ComplexConductivity(sigma_l * ratio.real, sigma_l * ratio.imag)

    def normal_state_sigma1(self) -> float:
        """Dissipative conductivity of this model's own Delta = 0 limit."""
        sigma_l = materials.london_conductivity(self.params, self.omega, self.constants)
        ratio = bcs.dirty_conductivity(self.omega, self.params.Tc, self.params,
                                       gap=0.0, settings=self.settings,
                                       constants=self.constants)
        return sigma_l * ratio.real


@dataclass
class DrudeBG(_ModelBase):
    """Normal metal: Drude response with Bloch-Grueneisen scattering."""

    params: DrudeMetalParams
    omega: float
    settings: QuadratureSettings = DEFAULT_SETTINGS
    constants: PhysicalConstants = CODATA2018
    tag = "drude_bg"

    def permittivity(self, T: float) -> complex:
        return materials.drude_bg_permittivity(T, self.omega, self.params,
                                               self.constants, self.settings)

    def conductivity(self, T: float) -> ComplexConductivity:
        eps = self.permittivity(T)
        scale = self.constants.eps0 * self.omega
        return ComplexConductivity(eps.imag * scale, (1.0 - eps.real) * scale)


@dataclass
class FixedConductivity(_ModelBase):
    """Temperature-independent conductivity, e.g. for what-if scans."""

    sigma: ComplexConductivity
    omega: float
    constants: PhysicalConstants = CODATA2018
    tag = "fixed"

    def conductivity(self, T: float) -> ComplexConductivity:
        return self.sigma


MaterialModel = Union[TwoFluidGC, AGTwoFluid, MattisBardeenClean,
                      DirtyBCS, DrudeBG, FixedConductivity]

MODEL_TAGS = ("two_fluid_gc", "ag_two_fluid", "mb_clean", "dirty_bcs",
              "drude_bg", "fixed")


def build_model(tag: str, omega: float, *,
                sc_params: Optional[SuperconductorParams] = None,
                drude_params: Optional[DrudeMetalParams] = None,
                fixed_sigma: Optional[ComplexConductivity] = None,
                eliashberg: bool = False,
                settings: QuadratureSettings = DEFAULT_SETTINGS,
                constants: PhysicalConstants = CODATA2018) -> MaterialModel:
    """Instantiate a model from its serialized tag."""
    if tag in ("two_fluid_gc", "ag_two_fluid", "mb_clean", "dirty_bcs"):
        if sc_params is None:
            raise DomainError(f"model '{tag}' requires superconductor parameters")
        params = materials.eliashberg_rescale(sc_params) if eliashberg else sc_params
        cls = {"two_fluid_gc": TwoFluidGC, "ag_two_fluid": AGTwoFluid,
               "mb_clean": MattisBardeenClean, "dirty_bcs": DirtyBCS}[tag]
        return cls(params=params, omega=omega, settings=settings, constants=constants)
    if tag == "drude_bg":
        if drude_params is None:
            raise DomainError("model 'drude_bg' requires Drude parameters")
        return DrudeBG(params=drude_params, omega=omega, settings=settings,
                       constants=constants)
    if tag == "fixed":
        if fixed_sigma is None:
            raise DomainError("model 'fixed' requires an explicit conductivity")
        return FixedConductivity(sigma=fixed_sigma, omega=omega, constants=constants)
    raise DomainError(f"unknown material model '{tag}' (choose from {MODEL_TAGS})")
