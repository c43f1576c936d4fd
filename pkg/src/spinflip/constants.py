"""Physical constants, unit helpers and the transition description.

Everything downstream computes in SI units.  The constant table is frozen
(CODATA 2018) so that derived numbers are reproducible bit for bit; the
table's checksum is echoed into every CSV header.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CODATA2018",
    "TransitionSpec",
    "RB87_SPIN_FLIP",
    "thermal_occupation",
    "wavenumber",
    "constants_checksum",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """Frozen table of the constants used throughout the package (SI)."""

    mu0: float    # vacuum permeability [H/m]
    eps0: float   # vacuum permittivity [F/m]
    c: float      # speed of light [m/s]
    hbar: float   # reduced Planck constant [J s]
    h: float      # Planck constant [J s]
    kB: float     # Boltzmann constant [J/K]
    muB: float    # Bohr magneton [J/T]
    gS: float     # electron gyromagnetic factor, taken as exactly 2
    eV: float     # electron volt [J]

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, float) and math.isfinite(v) and v > 0):
                raise DomainError(f"constant {f.name} must be a positive finite float")
        # consistency of the chosen set: c^2 mu0 eps0 == 1
        resid = abs(self.c**2 * self.mu0 * self.eps0 - 1.0)
        if resid > 1e-9:
            raise DomainError(f"inconsistent constants: c^2*mu0*eps0 - 1 = {resid:g}")


CODATA2018 = PhysicalConstants(
    mu0=1.25663706212e-6,
    eps0=8.8541878128e-12,
    c=299792458.0,
    hbar=1.054571817e-34,
    h=6.62607015e-34,
    kB=1.380649e-23,
    muB=9.2740100783e-24,
    gS=2.0,
    eV=1.602176634e-19,
)


def constants_checksum(constants: PhysicalConstants = CODATA2018) -> str:
    """Short SHA-256 digest of the constant table (for run headers)."""
    text = ",".join(f"{f.name}={getattr(constants, f.name)!r}" for f in fields(constants))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class TransitionSpec:
    """A magnetic dipole transition: frequency and squared spin matrix elements.

    ``sx2, sy2, sz2`` are the squared Cartesian components of the spin
    matrix element; their sum ``s_total2`` sets the free-space rate while
    the individual components weight the surface-induced part.
    """

    nu: float     # transition frequency [Hz]
    sx2: float = 0.0
    sy2: float = 1.0 / 16.0
    sz2: float = 1.0 / 16.0

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise DomainError("transition frequency must be positive and finite")
        for name in ("sx2", "sy2", "sz2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be non-negative and finite")
        if self.s_total2 <= 0:
            raise DomainError("total squared spin matrix element must be positive")

    @property
    def s_total2(self) -> float:
        return self.sx2 + self.sy2 + self.sz2

    @property
    def omega(self) -> float:
        """Angular frequency [rad/s]."""
        return 2.0 * math.pi * self.nu


#: Rate-limiting |2,2> -> |2,1> transition of optically pumped 87Rb:
#: nu = 560 kHz with S_y^2 = S_z^2 = 1/16, S_x = 0 (total S^2 = 1/8).
RB87_SPIN_FLIP = TransitionSpec(nu=560e3)


def thermal_occupation(nu: float, T: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Bose-Einstein photon occupation n of a mode at frequency ``nu`` [Hz].

    Returns exactly 0 at T = 0.  For h*nu << kB*T the direct expression
    1/(exp(x)-1) is replaced by the series kB*T/(h*nu) - 1/2, which is
    accurate to better than 1e-9 at the switchover x = 1e-6.
    """
    if not (math.isfinite(nu) and math.isfinite(T)):
        raise DomainError("thermal_occupation requires finite inputs")
    if nu <= 0:
        raise DomainError("frequency must be positive")
    if T < 0:
        raise DomainError("temperature must be non-negative")
    if T == 0.0:
        return 0.0
    x = constants.h * nu / (constants.kB * T)
    if x < 1e-6:
        return 1.0 / x - 0.5
    return 1.0 / math.expm1(x)


def wavenumber(nu: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Vacuum wavenumber k = 2 pi nu / c [1/m]."""
    if not math.isfinite(nu) or nu <= 0:
        raise DomainError("frequency must be positive and finite")
    return 2.0 * math.pi * nu / constants.c
