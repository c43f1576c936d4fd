"""Spin-flip lifetimes of trapped atoms near conducting and superconducting slabs.

The package computes the magnetic spin-flip transition rate of a two-level
atom held a distance z above a planar slab of thickness H, for two-fluid,
microscopic BCS (clean and dirty limit) and Drude material models, and
ships a CLI (``spinflip``) for parameter sweeps with CSV + figure output.
"""

from ._version import __version__
from .constants import (
    CODATA2018,
    RB87_SPIN_FLIP,
    PhysicalConstants,
    TransitionSpec,
    constants_checksum,
    thermal_occupation,
    wavenumber,
)
from .errors import (
    BracketingError,
    ConfigError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    InternalConsistencyError,
    OutOfRegimeError,
    SingularityError,
)
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    bisect_root,
    integrate_finite,
    integrate_gap_edge,
    integrate_semi_infinite,
    sqrt_upper,
)
from .materials import (
    GOLD,
    NIOBIUM,
    ComplexConductivity,
    DrudeMetalParams,
    SuperconductorParams,
    ag_superfluid_fraction,
    bloch_gruneisen_integral,
    characteristic_lengths,
    drude_bg_permittivity,
    drude_scattering_rate,
    eliashberg_rescale,
    london_conductivity,
    permittivity,
    two_fluid_conductivity,
)
from .bcs import (
    GapCurve,
    build_gap_curve,
    clean_conductivity,
    dirty_conductivity,
    gap_energy,
)
from .models import (
    AGTwoFluid,
    DirtyBCS,
    DrudeBG,
    FixedConductivity,
    MattisBardeenClean,
    TwoFluidGC,
    build_model,
)
from .slab import (
    HALF_SPACE,
    AnalyticValidity,
    Geometry,
    RateResult,
    analytic_tau_normal,
    analytic_tau_superconductor,
    fresnel_rp,
    fresnel_rs,
    gamma_free,
    gamma_slab,
    integral_parallel,
    integral_perp,
    scattering_cm,
    scattering_cn,
    total_rate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
