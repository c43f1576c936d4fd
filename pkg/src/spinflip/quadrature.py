"""Adaptive quadrature and root finding tuned to the rate integrals.

Three integral classes occur in this package: finite intervals with smooth
or mildly oscillatory complex integrands, semi-infinite integrals carrying
an explicit exp(-x) damping factor, and integrals whose integrand has an
inverse-square-root singularity at one or both endpoints.

The workhorse is a nested 7/15-point Gauss-Kronrod pair inside a global
adaptive bisection loop: the panel with the largest error estimate is split
until the summed estimate drops below ``rel_tol * |result|`` (with an
absolute floor).  Because the target quantities span ~40 decades across
parameter scans, the absolute floor is scaled by the magnitude of the first
coarse estimate instead of being a fixed number: a fixed floor would
silently truncate small results.

Endpoint singularities are removed analytically before quadrature:
``integrate_gap_edge`` substitutes x = a + (b-a) sin^2(theta) (both ends
flagged) or a one-sided x = a + t^2 shift, whose Jacobian cancels a
1/sqrt singularity exactly.

Integrands are called with a numpy array of abscissae and should return an
array of values (complex or real); plain scalar callables are accepted and
wrapped at a performance cost.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BracketingError,
    ConvergenceError,
    DivergenceError,
    DomainError,
)

__all__ = [
    "QuadratureSettings",
    "DEFAULT_SETTINGS",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_gap_edge",
    "sqrt_upper",
    "bisect_root",
]


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-8           # relative tolerance on the accumulated result
    abs_tol: float = 1e-300         # user absolute floor; see module docstring
    max_subdivisions: int = 2000    # panel budget per finite integral
    tail_tol: float = 1e-10         # relative tail truncation for semi-infinite integrals

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError("rel_tol must lie in (0, 1)")
        if self.abs_tol < 0:
            raise DomainError("abs_tol must be non-negative")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")
        if not (0.0 < self.tail_tol < 1.0):
            raise DomainError("tail_tol must lie in (0, 1)")


DEFAULT_SETTINGS = QuadratureSettings()

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
_KRONROD_ABSCISSAE = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_KRONROD_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# The embedded Gauss nodes are every second Kronrod node.
_GAUSS_WEIGHTS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])

_EPS = float(np.finfo(float).eps)


def _evaluate(f, x: np.ndarray) -> np.ndarray:
    try:
        arr = np.asarray(f(x))
        if arr.shape != x.shape:
            raise TypeError
    except TypeError:
        # scalar-only callable: fall back to a point-wise loop
        arr = np.asarray([f(float(xi)) for xi in x])
    return arr


def _panel(f, a: float, b: float):
    """One Gauss-Kronrod evaluation: (estimate, error estimate, sum |f|)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = _evaluate(f, mid + half * _KRONROD_ABSCISSAE)
    with np.errstate(over="ignore", invalid="ignore"):
        k15 = half * np.sum(_KRONROD_WEIGHTS * fx)
        g7 = half * np.sum(_GAUSS_WEIGHTS * fx[1::2])
        resabs = half * float(np.sum(_KRONROD_WEIGHTS * np.abs(fx)))
        err = abs(k15 - g7)
    return complex(k15), err, resabs


def integrate_finite(f, a: float, b: float,
                     settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    """Adaptively integrate ``f`` over the finite interval [a, b].

    Returns a complex value (real integrands come back with zero imaginary
    part).  Raises ConvergenceError, with the best estimate attached, if the
    subdivision budget is exhausted.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if a > b:
        raise DomainError("integrate_finite requires a <= b")
    if a == b:
        return 0.0 + 0.0j

    val, err, resabs0 = _panel(f, a, b)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise DivergenceError("integrand produced non-finite values")
    # noise floor: round-off scale of the first coarse estimate
    noise = 50.0 * _EPS * resabs0

    heap = [(-err, 0, a, b, val)]
    total = val
    total_err = err
    frozen_err = 0.0
    n_panels = 1
    counter = 1

    while True:
        tol = max(settings.rel_tol * abs(total), settings.abs_tol, noise)
        if total_err + frozen_err <= tol or not heap:
            return total
        if n_panels >= settings.max_subdivisions:
            raise ConvergenceError(
                f"subdivision budget ({settings.max_subdivisions}) exhausted; "
                f"error bound {total_err + frozen_err:.3e} over tolerance {tol:.3e}",
                estimate=total, error_bound=total_err + frozen_err)

        neg_err, _, pa, pb, pval = heapq.heappop(heap)
        total_err += neg_err  # remove this panel's error from the running sum
        pm = 0.5 * (pa + pb)
        if not (pa < pm < pb):
            # bisection point indistinguishable from the endpoints in double
            # precision; the panel cannot be refined further
            frozen_err += -neg_err
            continue
        lval, lerr, _ = _panel(f, pa, pm)
        rval, rerr, _ = _panel(f, pm, pb)
        if not all(map(math.isfinite, (lval.real, lval.imag, rval.real, rval.imag))):
            raise DivergenceError("integrand produced non-finite values")
        total += (lval + rval) - pval
        total_err += lerr + rerr
        heapq.heappush(heap, (-lerr, counter, pa, pm, lval))
        heapq.heappush(heap, (-rerr, counter + 1, pm, pb, rval))
        counter += 2
        n_panels += 1


def integrate_semi_infinite(f, settings: QuadratureSettings = DEFAULT_SETTINGS,
                            first_panel_width: float = 1.0,
                            max_panels: int = 60) -> complex:
    """Integrate ``f`` over [0, inf) for integrands damped like exp(-x).

    Successive panels of geometrically doubling width are integrated until a
    panel contributes less than ``tail_tol`` of the accumulated value twice
    in a row.  If the contributions never die out the integrand is treated
    as non-decaying and DivergenceError is raised.
    """
    if not (math.isfinite(first_panel_width) and first_panel_width > 0):
        raise DomainError("first_panel_width must be positive and finite")
    acc = 0.0 + 0.0j
    x0 = 0.0
    width = first_panel_width
    consecutive_small = 0
    for _ in range(max_panels):
        val = integrate_finite(f, x0, x0 + width, settings)
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise DivergenceError("panel produced non-finite contribution")
        acc += val
        if abs(val) <= settings.tail_tol * abs(acc):
            consecutive_small += 1
            if consecutive_small >= 2:
                return acc
        else:
            consecutive_small = 0
        x0 += width
        width *= 2.0
    raise DivergenceError(
        f"semi-infinite integral did not converge within {max_panels} panels; "
        "integrand does not appear to decay")


def integrate_gap_edge(f, a: float, b: float,
                       singular_at_a: bool = False, singular_at_b: bool = False,
                       settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    """Integrate ``f`` over [a, b] allowing 1/sqrt endpoint singularities.

    The flagged endpoints are regularized by substitution before handing the
    integral to ``integrate_finite``; with no flags this is a pass-through.
    """
    if a > b:
        raise DomainError("integrate_gap_edge requires a <= b")
    if a == b:
        return 0.0 + 0.0j
    span = b - a
    if singular_at_a and singular_at_b:
        def g(theta):
            s = np.sin(theta)
            return f(a + span * s * s) * span * np.sin(2.0 * theta)
        return integrate_finite(g, 0.0, 0.5 * math.pi, settings)
    if singular_at_a:
        def g(t):
            return f(a + t * t) * 2.0 * t
        return integrate_finite(g, 0.0, math.sqrt(span), settings)
    if singular_at_b:
        def g(t):
            return f(b - t * t) * 2.0 * t
        return integrate_finite(g, 0.0, math.sqrt(span), settings)
    return integrate_finite(f, a, b, settings)


def sqrt_upper(w):
    """Square root with non-negative imaginary part.

    For real w >= 0 this is the ordinary non-negative root; for every other
    input the branch is chosen so that Im(sqrt) >= 0, which corresponds to
    waves decaying into an absorbing medium.  Accepts scalars or arrays.
    """
    s = np.sqrt(np.asarray(w, dtype=complex))
    s = np.where(s.imag < 0.0, -s, s)
    if s.ndim == 0:
        return complex(s)
    return s


def bisect_root(g, lo: float, hi: float, rel_tol: float = 1e-12,
                abs_tol: float = 0.0, max_iter: int = 600) -> float:
    """Find a root of ``g`` on [lo, hi] by bisection.

    Requires a sign change (or an exact zero at an endpoint).  Terminates
    when the bracket width falls below ``rel_tol * |x| + abs_tol`` or the
    bracket collapses to adjacent floats.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise DomainError("bisect_root requires finite lo < hi")
    flo = g(lo)
    if flo == 0.0:
        return lo
    fhi = g(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketingError(f"no sign change on [{lo:g}, {hi:g}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        if (hi - lo) <= rel_tol * abs(mid) + abs_tol:
            return mid
        fm = g(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
