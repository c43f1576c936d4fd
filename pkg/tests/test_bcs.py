import math

import numpy as np
import pytest

from spinflip import (
    CODATA2018,
    NIOBIUM,
    RB87_SPIN_FLIP,
    GapCurve,
    OutOfRegimeError,
    build_gap_curve,
    clean_conductivity,
    dirty_conductivity,
    gap_energy,
    london_conductivity,
)

OMEGA = RB87_SPIN_FLIP.omega
E_PHOTON = CODATA2018.hbar * OMEGA
TC = NIOBIUM.Tc
DELTA0 = NIOBIUM.gap_zero()


@pytest.fixture(scope="module")
def gap_curve():
    return build_gap_curve(NIOBIUM)


class TestGapEquation:
    def test_zero_temperature_value(self):
        assert gap_energy(0.0, NIOBIUM) == DELTA0
        assert DELTA0 / CODATA2018.eV == pytest.approx(1.264e-3, rel=1e-3)

    def test_gap_closes_at_tc(self):
        assert gap_energy(TC, NIOBIUM) == 0.0
        assert gap_energy(1.3 * TC, NIOBIUM) == 0.0

    def test_textbook_midpoint(self):
        # weak-coupling BCS: Delta(Tc/2)/Delta(0) = 0.9569
        assert gap_energy(TC / 2, NIOBIUM) / DELTA0 == pytest.approx(0.9569, rel=1e-3)

    def test_monotone_decreasing_grid(self):
        ts = np.linspace(0.1, 0.999, 50) * TC
        deltas = [gap_energy(float(t), NIOBIUM) for t in ts]
        assert all(b < a for a, b in zip(deltas, deltas[1:]))

    def test_collapse_near_tc(self):
        assert gap_energy(0.999 * TC, NIOBIUM) / DELTA0 < 0.1

    def test_low_temperature_saturation(self):
        assert gap_energy(0.01 * TC, NIOBIUM) == pytest.approx(DELTA0, rel=1e-12)


class TestGapCurve:
    def test_construction_identity(self, gap_curve):
        assert gap_curve.delta0 == pytest.approx(3.53 * CODATA2018.kB * TC / 2, rel=1e-12)

    def test_interpolation_matches_direct_solve(self, gap_curve):
        for t in (0.3 * TC, 0.5 * TC, 0.9 * TC):
            assert gap_curve.delta_at(t) == pytest.approx(
                gap_energy(t, NIOBIUM), rel=1e-4)

    def test_zero_above_tc(self, gap_curve):
        assert gap_curve.delta_at(TC) == 0.0
        assert gap_curve.delta_at(2 * TC) == 0.0

    def test_rejects_non_monotone_samples(self):
        bad = np.array([[0.0, 2.0], [1.0, 2.5], [2.0, 0.0]])
        with pytest.raises(Exception):
            GapCurve(Tc=2.0, delta0=2.0, samples=bad)


class TestCleanLimit:
    def test_normal_state_normalization(self):
        got = clean_conductivity(OMEGA, TC, NIOBIUM, gap=0.0)
        assert got.real == pytest.approx(1.0, rel=1e-3)
        assert got.imag == 0.0

    def test_reactive_asymptote(self):
        # oracle: sigma2/sigma_n -> (pi Delta / E) tanh(Delta / 2 kB T)
        T = 0.2 * TC
        delta = gap_energy(T, NIOBIUM)
        got = clean_conductivity(OMEGA, T, NIOBIUM, gap=delta)
        asym = math.pi * delta / E_PHOTON * math.tanh(delta / (2 * CODATA2018.kB * T))
        assert got.imag == pytest.approx(asym, rel=1e-3)
        assert got.imag == pytest.approx(1.7e6, rel=0.05)

    def test_zero_temperature_is_lossless(self):
        got = clean_conductivity(OMEGA, 0.0, NIOBIUM, gap=DELTA0)
        assert got.real == 0.0
        assert got.imag > 0.0

    def test_pair_breaking_guard(self):
        with pytest.raises(OutOfRegimeError):
            clean_conductivity(OMEGA, 1.0, NIOBIUM, gap=0.4 * E_PHOTON)


class TestDirtyLimit:
    def test_drude_reduction(self):
        got = dirty_conductivity(OMEGA, TC, NIOBIUM, gap=0.0)
        omega_tau = OMEGA * NIOBIUM.impurity_tau()
        assert got.real == pytest.approx(omega_tau, rel=1e-4)
        assert got.imag == pytest.approx(omega_tau**2, rel=1e-4)

    def test_london_length_reference(self):
        # published check point: lambda_L(Tc/2) = 89.2 nm
        T = TC / 2
        delta = gap_energy(T, NIOBIUM)
        got = dirty_conductivity(OMEGA, T, NIOBIUM, gap=delta)
        sigma2 = got.imag * london_conductivity(NIOBIUM, OMEGA)
        lam = math.sqrt(1.0 / (OMEGA * CODATA2018.mu0 * sigma2))
        assert lam == pytest.approx(89.2e-9, rel=0.10)

    def test_agrees_with_impurity_suppressed_superfluid(self, gap_curve):
        from spinflip import ag_superfluid_fraction

        for t_over_tc in np.linspace(0.1, 0.9, 9):
            T = float(t_over_tc) * TC
            delta = gap_curve.delta_at(T)
            dirty = dirty_conductivity(OMEGA, T, NIOBIUM, gap=delta).imag
            ag = ag_superfluid_fraction(T, delta, NIOBIUM)
            assert abs(ag - dirty) / max(ag, dirty) <= 0.30

    def test_zero_temperature_is_lossless(self):
        got = dirty_conductivity(OMEGA, 0.0, NIOBIUM, gap=DELTA0)
        assert got.real == 0.0
        assert got.imag > 0.0

    def test_pair_breaking_guard(self):
        with pytest.raises(OutOfRegimeError):
            dirty_conductivity(OMEGA, 1.0, NIOBIUM, gap=0.4 * E_PHOTON)


class TestJointInvariants:
    def test_components_nonnegative(self, gap_curve):
        for t_over_tc in (0.05, 0.2, 0.5, 0.8, 0.95, 1.1, 1.2):
            T = t_over_tc * TC
            delta = gap_curve.delta_at(T)
            c = clean_conductivity(OMEGA, T, NIOBIUM, gap=delta)
            d = dirty_conductivity(OMEGA, T, NIOBIUM, gap=delta)
            assert c.real >= 0.0 and c.imag >= 0.0
            assert d.real >= 0.0 and d.imag >= 0.0

    def test_sigma2_nonincreasing(self, gap_curve):
        ts = np.linspace(0.05, 0.98, 20) * TC
        clean = [clean_conductivity(OMEGA, float(t), NIOBIUM,
                                    gap=gap_curve.delta_at(float(t))).imag for t in ts]
        dirty = [dirty_conductivity(OMEGA, float(t), NIOBIUM,
                                    gap=gap_curve.delta_at(float(t))).imag for t in ts]
        assert all(b <= a * (1 + 1e-9) for a, b in zip(clean, clean[1:]))
        assert all(b <= a * (1 + 1e-9) for a, b in zip(dirty, dirty[1:]))

    def test_dissipation_freezes_out(self, gap_curve):
        T = 0.05 * TC
        delta = gap_curve.delta_at(T)
        assert clean_conductivity(OMEGA, T, NIOBIUM, gap=delta).real < 1e-6
        dirty_cold = dirty_conductivity(OMEGA, T, NIOBIUM, gap=delta).real
        dirty_normal = dirty_conductivity(OMEGA, TC, NIOBIUM, gap=0.0).real
        assert dirty_cold / dirty_normal < 1e-6

    def test_clean_dirty_sigma2_same_scale(self, gap_curve):
        # after normalizing both to the T=0 inductive response the two
        # reactive conductivities stay within a factor of a few
        sigma_l = london_conductivity(NIOBIUM, OMEGA)
        for t_over_tc in np.linspace(0.1, 0.9, 9):
            T = float(t_over_tc) * TC
            delta = gap_curve.delta_at(T)
            clean = clean_conductivity(OMEGA, T, NIOBIUM, gap=delta).imag
            dirty = dirty_conductivity(OMEGA, T, NIOBIUM, gap=delta).imag
            ratio = (clean * NIOBIUM.sigma_n / sigma_l) / dirty
            assert 0.2 <= ratio <= 5.0

    def test_eliashberg_rescaled_params_still_physical(self, gap_curve):
        from spinflip import eliashberg_rescale

        resc = eliashberg_rescale(NIOBIUM)
        T = TC / 2
        delta = gap_curve.delta_at(T)
        d = dirty_conductivity(OMEGA, T, resc, gap=delta)
        assert d.real >= 0.0 and d.imag > 0.0
