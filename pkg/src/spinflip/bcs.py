"""Weak-coupling BCS quantities: gap curve and microscopic conductivities.

The temperature-dependent gap Delta(T) solves

    ln[(E_D + sqrt(E_D^2 + Delta0^2))/Delta0]
        = int_0^{E_D} dx tanh(sqrt(x^2+Delta^2)/(2 kB T)) / sqrt(x^2+Delta^2)

with E_D the Debye energy and Delta0 = 3.53 kB Tc / 2; the left side equals
the x-integral at T = 0, so Delta -> Delta0 there by construction.

The clean- and dirty-limit conductivities are frequency integrals over the
quasiparticle coherence factor

    g(x) = (x^2 + Delta^2 + E x) / (u1 u2),
    u1 = sqrt(x^2 - Delta^2),  u2 = sqrt((x+E)^2 - Delta^2),   E = hbar*omega,

split into a sub-gap window x in [Delta-E, Delta] (where u1 is imaginary and
the response is reactive) and a tail x > Delta.  Written as two separate
thermal integrals both tails diverge since g -> 1; combining them into a
single integrand proportional to tanh((x+E)/2kBT) - tanh(x/2kBT) restores
exponential convergence.  Numerical hygiene that matters at E/Delta ~ 1e-6:

* the window is integrated in the shifted variable s = (x-(Delta-E))/E in
  [0, 1] with x^2-Delta^2 etc. kept in exactly factored form, so no digits
  are lost to the huge scale separation;
* both window endpoints carry 1/sqrt singularities (u1 vanishes at x=Delta,
  u2 at x=Delta-E) and are removed by the sin^2 substitution;
* tanh differences are evaluated as sinh(a-b)/(cosh a cosh b) with an
  overflow-safe branch, never as a literal difference;
* u2 - u1 is computed from (u2^2-u1^2)/(u2+u1) = E(2x+E)/(u1+u2), and
  g - 1 from the identity g-1 = Delta^2 (2x+E)^2 / (u1 u2 (N + u1 u2)).

Branch choice: on the window the root of x^2 - Delta^2 is taken with
negative imaginary part, u1 = -i sqrt(Delta^2 - x^2).  With that choice the
clean-limit expression evaluates directly to sigma1 + i*sigma2 with both
parts non-negative, and the dirty-limit expression evaluates to
sigma2 - i*sigma1 (its Delta = 0 reduction is the Drude law, which fixes
the mapping); the opposite branch flips the sign of sigma2 and is
inconsistent with a passive response.

The dirty-limit sigma2 integrand decays only like 1/x^3, so the thermal
cutoff x = Delta + 60 kB T is supplemented by a mapped tail integral to
infinity; without it sigma2 is biased by several percent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import CODATA2018, PhysicalConstants
from .errors import DomainError, InternalConsistencyError, OutOfRegimeError
from .materials import SuperconductorParams
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    bisect_root,
    integrate_finite,
    integrate_gap_edge,
)

__all__ = [
    "GapCurve",
    "gap_energy",
    "build_gap_curve",
    "clean_conductivity",
    "dirty_conductivity",
]

# Within this fraction of Tc the gap is defined to be zero: Delta collapses
# like (1-T/Tc)^(1/2) and the solver bracket degenerates faster than the
# bisection tolerance.
_TC_EDGE = 1e-4


def _gap_lhs(params: SuperconductorParams, constants: PhysicalConstants) -> float:
    ed = params.debye_energy
    d0 = params.gap_zero(constants)
    return math.log((ed + math.hypot(ed, d0)) / d0)


def _gap_rhs(delta: float, T: float, params: SuperconductorParams,
             constants: PhysicalConstants, settings: QuadratureSettings) -> float:
    kT2 = 2.0 * constants.kB * T

    def integrand(x):
        e = np.sqrt(x * x + delta * delta)
        return np.tanh(e / kT2) / e

    return integrate_finite(integrand, 0.0, params.debye_energy, settings).real


def gap_energy(T: float, params: SuperconductorParams,
               settings: QuadratureSettings = DEFAULT_SETTINGS,
               constants: PhysicalConstants = CODATA2018) -> float:
    """Superconducting gap Delta(T) in joules; 0 at and above Tc."""
    if not math.isfinite(T) or T < 0:
        raise DomainError("temperature must be non-negative and finite")
    delta0 = params.gap_zero(constants)
    if T == 0.0:
        return delta0
    if T >= params.Tc * (1.0 - _TC_EDGE):
        return 0.0
    # Solve tighter than the surrounding physics needs: the root shifts by
    # ~(integration error)*Delta0, and a sloppy tolerance would break the
    # monotonicity of Delta(T) at low T where the true variation is tiny.
    gap_settings = QuadratureSettings(
        rel_tol=min(settings.rel_tol, 1e-12),
        abs_tol=settings.abs_tol,
        max_subdivisions=settings.max_subdivisions,
        tail_tol=settings.tail_tol)
    lhs = _gap_lhs(params, constants)

    def g(delta):
        return _gap_rhs(delta, T, params, constants, gap_settings) - lhs

    lo = 1e-6 * delta0
    if g(lo) <= 0.0:
        # the equation's own transition lies marginally below the nominal Tc
        return 0.0
    if g(delta0) >= 0.0:
        # within integration noise of the T = 0 ceiling
        return delta0
    return bisect_root(g, lo, delta0, rel_tol=1e-12, abs_tol=1e-15 * delta0)


@dataclass(frozen=True)
class GapCurve:
    """Cached gap samples with monotone interpolation for fast scans."""

    Tc: float                      # [K]
    delta0: float                  # Delta(0) [J]
    samples: np.ndarray = field(repr=False)  # shape (n, 2): (T [K], Delta [J])

    def __post_init__(self):
        ts = self.samples[:, 0]
        ds = self.samples[:, 1]
        if np.any(np.diff(ts) <= 0):
            raise DomainError("gap samples must have strictly increasing temperatures")
        if np.any(np.diff(ds) > 0):
            raise DomainError("gap samples must be non-increasing in temperature")

    def delta_at(self, T: float) -> float:
        if T < 0:
            raise DomainError("temperature must be non-negative")
        if T >= self.Tc:
            return 0.0
        return float(np.interp(T, self.samples[:, 0], self.samples[:, 1]))


def build_gap_curve(params: SuperconductorParams, n: int = 400,
                    settings: QuadratureSettings = DEFAULT_SETTINGS,
                    constants: PhysicalConstants = CODATA2018) -> GapCurve:
    """Solve the gap equation on a grid refined toward Tc.

    Samples are log-spaced in the reduced distance 1 - T/Tc (that is where
    Delta collapses), plus exact anchors at T = 0 and T = Tc.
    """
    if n < 8:
        raise DomainError("need at least 8 samples")
    reduced = np.geomspace(_TC_EDGE, 1.0, n - 1)[:-1]
    ts = params.Tc * (1.0 - reduced)[::-1]  # ascending, (0, Tc(1-1e-4)]
    delta0 = params.gap_zero(constants)
    rows = [(0.0, delta0)]
    for t in ts:
        rows.append((float(t), gap_energy(float(t), params, settings, constants)))
    rows.append((params.Tc, 0.0))
    return GapCurve(Tc=params.Tc, delta0=delta0, samples=np.asarray(rows))


def _tanh_diff(a, b):
    """tanh(a) - tanh(b) for arrays a >= b >= 0 without cancellation."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = a - b
    small = a < 350.0
    out = np.empty_like(a)
    # moderate arguments: sinh(a-b)/(cosh a cosh b), exact to machine precision
    out[small] = np.sinh(d[small]) / (np.cosh(a[small]) * np.cosh(b[small]))
    big = ~small
    if np.any(big):
        # cosh would overflow; same expression with the exponentials factored
        ab, bb, db = a[big], b[big], d[big]
        out[big] = (4.0 * np.sinh(db) * np.exp(-(ab + bb))
                    / ((1.0 + np.exp(-2.0 * ab)) * (1.0 + np.exp(-2.0 * bb))))
    return out


def _resolve_gap(T, params, gap, settings, constants) -> float:
    if gap is None:
        return gap_energy(T, params, settings, constants)
    if isinstance(gap, GapCurve):
        return gap.delta_at(T)
    return float(gap)


def _normal_fraction_a(e_ph: float, kT2: float) -> float:
    """A = (1/E) int_0^E tanh(u/(2kBT)) du = (kT2/E) ln cosh(E/kT2)."""
    if kT2 == 0.0:
        return 1.0
    r = e_ph / kT2
    if r > 30.0:
        return (r - math.log(2.0) + math.log1p(math.exp(-2.0 * r))) / r
    return math.log(math.cosh(r)) / r


def clean_conductivity(omega: float, T: float, params: SuperconductorParams,
                       gap=None,
                       settings: QuadratureSettings = DEFAULT_SETTINGS,
                       constants: PhysicalConstants = CODATA2018) -> complex:
    """Clean-limit conductivity ratio sigma/sigma_n at frequency omega.

    Valid for photon energies below the pair-breaking threshold 2 Delta(T);
    at Delta = 0 it reduces to the normal-state value 1 (up to a tiny
    hbar*omega/kB*T correction).  ``gap`` may be a precomputed Delta(T) in
    joules, a GapCurve, or None to solve on the fly.
    """
    if omega <= 0:
        raise DomainError("omega must be positive")
    if T < 0:
        raise DomainError("temperature must be non-negative")
    e_ph = constants.hbar * omega
    delta = _resolve_gap(T, params, gap, settings, constants)
    kT2 = 2.0 * constants.kB * T

    if delta == 0.0:
        a = _normal_fraction_a(e_ph, kT2)
        return complex(1.0 - 2.0 * a, 0.0)
    if e_ph >= 2.0 * delta:
        raise OutOfRegimeError(
            f"photon energy {e_ph:.3e} J reaches the pair-breaking threshold "
            f"2*Delta = {2.0 * delta:.3e} J")

    # reactive part: sub-gap window in s = (x - (Delta - E))/E
    def window(s):
        one_m = 1.0 - s
        a1 = np.sqrt(e_ph * one_m * (2.0 * delta - e_ph * one_m))  # |u1|
        b2 = np.sqrt(e_ph * s * (2.0 * delta + e_ph * s))          # u2
        x = delta - e_ph * one_m
        num = x * (x + e_ph) + delta * delta
        th = np.tanh((delta + s * e_ph) / kT2) if kT2 > 0 else 1.0
        return th * num / (a1 * b2)

    sigma2 = integrate_gap_edge(window, 0.0, 1.0, True, True, settings).real

    # dissipative part: combined thermal tail above the gap, y = x - Delta
    sigma1 = 0.0
    if T > 0.0:
        y_max = 60.0 * constants.kB * T

        def tail(y):
            u1 = np.sqrt(y * (y + 2.0 * delta))
            u2 = np.sqrt((y + e_ph) * (y + 2.0 * delta + e_ph))
            num = (delta + y) * (delta + y + e_ph) + delta * delta
            td = _tanh_diff((y + delta + e_ph) / kT2, (y + delta) / kT2)
            return td * num / (u1 * u2) / e_ph

        sigma1 = integrate_gap_edge(tail, 0.0, y_max, True, False, settings).real

    return complex(sigma1, sigma2)


def dirty_conductivity(omega: float, T: float, params: SuperconductorParams,
                       gap=None,
                       settings: QuadratureSettings = DEFAULT_SETTINGS,
                       constants: PhysicalConstants = CODATA2018) -> complex:
    """Dirty-limit conductivity ratio sigma/sigma_L at frequency omega.

    Includes non-magnetic impurity scattering through hbar/tau =
    impurity_strength * Delta(0), which regularizes the u2 - u1 -> 0
    degeneracy of the combined integrand.  Same regime restrictions as the
    clean limit; the Delta = 0 reduction is the Drude law
    sigma/sigma_L = (omega tau)^2 + ... + i*(...)  evaluated in closed form.
    """
    if omega <= 0:
        raise DomainError("omega must be positive")
    if T < 0:
        raise DomainError("temperature must be non-negative")
    e_ph = constants.hbar * omega
    h_imp = params.impurity_strength * params.gap_zero(constants)  # hbar/tau [J]
    delta = _resolve_gap(T, params, gap, settings, constants)
    kT2 = 2.0 * constants.kB * T

    if delta == 0.0:
        a = _normal_fraction_a(e_ph, kT2)
        printed = (e_ph * (1.0 - a) / complex(e_ph, h_imp)
                   + e_ph * a / complex(e_ph, -h_imp))
        sigma = 1j * printed
        return complex(max(sigma.real, 0.0), sigma.imag)
    if e_ph >= 2.0 * delta:
        raise OutOfRegimeError(
            f"photon energy {e_ph:.3e} J reaches the pair-breaking threshold "
            f"2*Delta = {2.0 * delta:.3e} J")

    # Sub-gap window.  With u1 = -i a1 both kernel terms combine to the
    # purely real 2 (u2 + c (a1 + h)) / (u2^2 + (a1 + h)^2), c = num/(a1 u2):
    # the window feeds sigma2 only.
    def window(s):
        one_m = 1.0 - s
        a1 = np.sqrt(e_ph * one_m * (2.0 * delta - e_ph * one_m))
        b2 = np.sqrt(e_ph * s * (2.0 * delta + e_ph * s))
        x = delta - e_ph * one_m
        num = x * (x + e_ph) + delta * delta
        th = np.tanh((delta + s * e_ph) / kT2) if kT2 > 0 else 1.0
        cap = a1 + h_imp
        return e_ph * th * (b2 + num * cap / (a1 * b2)) / (b2 * b2 + cap * cap)

    sigma2 = integrate_gap_edge(window, 0.0, 1.0, True, True, settings).real

    y_max = 60.0 * constants.kB * T if T > 0 else 0.0

    def _pieces(y):
        u1 = np.sqrt(y * (y + 2.0 * delta))
        u2 = np.sqrt((y + e_ph) * (y + 2.0 * delta + e_ph))
        x2 = 2.0 * (delta + y) + e_ph  # = 2x + E
        num = (delta + y) * (delta + y + e_ph) + delta * delta
        prod = u1 * u2
        gp1 = (num + prod) / prod
        gm1 = delta * delta * x2 * x2 / (prod * (num + prod))
        du = e_ph * x2 / (u1 + u2)  # u2 - u1, cancellation-free
        return u1, u2, gp1, gm1, du

    # thermally weighted tail: exponentially convergent, complex
    sigma1 = 0.0
    re_exp = 0.0
    if T > 0.0:
        def tail_exp(y):
            u1, u2, gp1, gm1, du = _pieces(y)
            td = _tanh_diff((y + delta + e_ph) / kT2, (y + delta) / kT2)
            val = 0.5 * td * (gp1 / (du + 1j * h_imp)
                              - gm1 / (u1 + u2 - 1j * h_imp))
            return val

        texp = integrate_gap_edge(tail_exp, 0.0, y_max, True, False, settings)
        sigma1 = -texp.imag
        re_exp = texp.real

    # slowly decaying (1/x^3) real remainder of the tail: reactive only
    def tail_slow(y):
        u1, u2, gp1, gm1, du = _pieces(y)
        sp = u1 + u2
        if kT2 > 0:
            th = np.tanh((y + delta) / kT2)
        else:
            th = 1.0
        return -gm1 * th * sp / (sp * sp + h_imp * h_imp)

    y_split = max(y_max, 2.0 * delta)
    slow = integrate_gap_edge(tail_slow, 0.0, y_split, True, False, settings).real

    def tail_slow_mapped(t):
        y = y_split / t
        return tail_slow(y) * y_split / (t * t)

    slow += integrate_finite(tail_slow_mapped, 0.0, 1.0, settings).real

    sigma2 += re_exp + slow
    if not (math.isfinite(sigma1) and math.isfinite(sigma2)):
        raise InternalConsistencyError("dirty conductivity produced non-finite parts")
    return complex(sigma1, sigma2)
