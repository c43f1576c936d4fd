import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from spinflip import (
    BracketingError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    QuadratureSettings,
    bisect_root,
    integrate_finite,
    integrate_gap_edge,
    integrate_semi_infinite,
    sqrt_upper,
)


class TestSettings:
    def test_defaults(self):
        s = QuadratureSettings()
        assert s.rel_tol == 1e-8 and s.max_subdivisions == 2000

    @pytest.mark.parametrize("kwargs", [dict(rel_tol=0.0), dict(rel_tol=2.0),
                                        dict(max_subdivisions=0),
                                        dict(tail_tol=0.0), dict(abs_tol=-1.0)])
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSettings(**kwargs)


class TestFinite:
    def test_polynomial_exactness(self):
        for n in range(11):
            got = integrate_finite(lambda x, n=n: x**n, 0.0, 1.0).real
            assert got == pytest.approx(1.0 / (n + 1), rel=1e-14)

    def test_empty_interval(self):
        assert integrate_finite(lambda x: x, 3.0, 3.0) == 0.0

    def test_oscillatory_closed_form(self):
        tkz = 1.1737e-6
        got = integrate_finite(lambda x: np.exp(1j * x), 0.0, tkz)
        closed = (np.exp(1j * tkz) - 1.0) / 1j
        assert abs(got - closed) < 1e-10 * abs(closed)
        # first-order shape: 2kz * (1 + i kz)
        assert got.real == pytest.approx(tkz, rel=1e-10)

    def test_inverse_sqrt_endpoint(self):
        got = integrate_finite(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0).real
        assert got == pytest.approx(2.0, abs=1e-6)

    def test_linearity(self):
        def f(x):
            return np.exp(-x) * np.sin(3 * x)

        def g(x):
            return x * np.cos(x)

        combined = integrate_finite(lambda x: 2.5 * f(x) - 1.5 * g(x), 0.0, 4.0)
        separate = 2.5 * integrate_finite(f, 0.0, 4.0) - 1.5 * integrate_finite(g, 0.0, 4.0)
        assert abs(combined - separate) <= 1e-8 * abs(separate)

    def test_scalar_callable_fallback(self):
        got = integrate_finite(lambda x: math.sin(x), 0.0, math.pi).real
        assert got == pytest.approx(2.0, rel=1e-10)

    def test_budget_exhaustion_carries_estimate(self):
        settings = QuadratureSettings(rel_tol=1e-12, max_subdivisions=4)
        with pytest.raises(ConvergenceError) as exc:
            integrate_finite(lambda x: np.cos(1e7 * x), 0.0, 1.0, settings)
        assert exc.value.estimate is not None
        assert exc.value.error_bound > 0

    def test_invalid_interval(self):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 1.0, 0.0)
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 0.0, math.inf)


class TestSemiInfinite:
    def test_plain_exponential(self):
        assert integrate_semi_infinite(lambda x: np.exp(-x)).real == pytest.approx(1.0, rel=1e-9)

    def test_gamma_three(self):
        got = integrate_semi_infinite(lambda x: x * x * np.exp(-x)).real
        assert got == pytest.approx(2.0, rel=1e-9)

    @pytest.mark.parametrize("n", range(7))
    def test_gamma_closed_forms(self, n):
        got = integrate_semi_infinite(lambda x: x**n * np.exp(-x)).real
        assert got == pytest.approx(math.factorial(n), rel=1e-9)

    def test_zero_integrand(self):
        assert integrate_semi_infinite(lambda x: np.zeros_like(x)) == 0.0

    def test_divergence_detected(self):
        with np.errstate(over="ignore"), pytest.raises(DivergenceError):
            integrate_semi_infinite(lambda x: np.exp(0.5 * x), max_panels=30)

    def test_slab_coefficient_against_trapezoid(self):
        # evanescent-branch slab reflection for the standard niobium film at
        # half the critical temperature; oracle is a dense uniform trapezoid
        from spinflip import (
            Geometry,
            NIOBIUM,
            RB87_SPIN_FLIP,
            permittivity,
            scattering_cm,
            two_fluid_conductivity,
            wavenumber,
        )

        omega = RB87_SPIN_FLIP.omega
        k = wavenumber(RB87_SPIN_FLIP.nu)
        eps = permittivity(two_fluid_conductivity(4.155, NIOBIUM, omega), omega)
        geom = Geometry(z=50e-6, H=math.inf, k=k)

        def f(t):
            return np.exp(-t) * scattering_cm(1j * t, eps, geom)

        got = integrate_semi_infinite(f, first_panel_width=max(1.0, 2 * geom.kz))
        t = np.linspace(0.0, 200.0, 2_000_001)
        oracle = np.trapezoid(f(t), t)
        assert abs(got - oracle) <= 1e-6 * abs(oracle)


class TestGapEdge:
    def test_beta_function_both_ends(self):
        got = integrate_gap_edge(lambda x: 1.0 / np.sqrt(x * (1.0 - x)),
                                 0.0, 1.0, True, True).real
        assert got == pytest.approx(math.pi, rel=1e-12)

    def test_right_singularity(self):
        got = integrate_gap_edge(lambda x: 1.0 / np.sqrt(1.0 - x * x),
                                 0.0, 1.0, False, True).real
        assert got == pytest.approx(math.pi / 2.0, rel=1e-12)

    def test_left_singularity(self):
        got = integrate_gap_edge(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0, True, False).real
        assert got == pytest.approx(2.0, rel=1e-12)

    def test_no_flags_passthrough(self):
        f = lambda x: np.ones_like(x)  # noqa: E731
        assert integrate_gap_edge(f, 0.0, 1.0) == integrate_finite(f, 0.0, 1.0)
        assert integrate_gap_edge(f, 0.0, 1.0).real == pytest.approx(1.0, rel=1e-14)


class TestSqrtUpper:
    def test_positive_real(self):
        assert sqrt_upper(4.0) == 2.0

    def test_negative_real(self):
        assert sqrt_upper(-1.0) == 1j

    def test_array_input(self):
        out = sqrt_upper(np.array([-4.0, 9.0]))
        assert out[0] == 2j and out[1] == 3.0

    @given(st.complex_numbers(min_magnitude=1e-150, max_magnitude=1e150,
                              allow_nan=False, allow_infinity=False))
    @hyp_settings(max_examples=300)
    def test_branch_property(self, w):
        s = sqrt_upper(w)
        assert s.imag >= 0.0
        assert abs(s * s - w) <= 1e-12 * abs(w)

    def test_zero(self):
        assert sqrt_upper(0.0) == 0.0

    @given(st.floats(min_value=1e-100, max_value=1e100))
    @hyp_settings(max_examples=100)
    def test_negative_axis_maps_up(self, mag):
        s = sqrt_upper(-mag)
        assert s.real == pytest.approx(0.0, abs=1e-20 * math.sqrt(mag))
        assert s.imag == pytest.approx(math.sqrt(mag), rel=1e-12)


class TestBisect:
    def test_linear(self):
        assert bisect_root(lambda x: x - 1.0, 0.0, 2.0) == pytest.approx(1.0, rel=1e-12)

    def test_cosine(self):
        assert bisect_root(math.cos, 0.0, 3.0) == pytest.approx(math.pi / 2.0, rel=1e-10)

    def test_cube_root_of_two(self):
        got = bisect_root(lambda x: x**3 - 2.0, 0.0, 2.0)
        assert got == pytest.approx(2.0 ** (1.0 / 3.0), rel=1e-10)

    def test_no_sign_change(self):
        with pytest.raises(BracketingError):
            bisect_root(lambda x: x + 1.0, 0.0, 2.0)

    def test_root_at_endpoint(self):
        assert bisect_root(lambda x: x, 0.0, 1.0) == 0.0
