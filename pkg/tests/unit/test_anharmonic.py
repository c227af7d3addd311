"""
Unit tests for anharmonic.py

Tests the exact perturbation series, the quantization rules and the two
numerical references for the quartic oscillator.
"""

import math
from fractions import Fraction
from types import SimpleNamespace

import numpy as np
import pytest

from torus_entropy.anharmonic import (
    action_from_energy,
    apply_quantization,
    classical_covariance_prefactors,
    classical_covariance_series,
    closing_time,
    energy_from_action,
    orbit_average,
    orbit_period,
    quantum_covariance_series,
    residual_slope,
    time_average_oracle,
    turning_point,
    variance_product_series,
)
from torus_entropy.classes import (
    OracleConfig,
    PerturbationSeries,
    QuantizationRules,
    QuarticOscillator,
    Side,
)
from torus_entropy.errors import (
    EnergyDriftExceeded,
    NegativeAction,
    NoTurningPoint,
    OrbitNotClosed,
    QuadratureFailure,
    RootBracketFailure,
    UnsupportedPower,
)


def with_coupling(osc, coupling):
    return osc.model_copy(update={"coupling": coupling})


class TestClassicalSeries:
    """Test the classical torus moments."""

    def test_unit_prefactors(self, quartic):
        series = classical_covariance_prefactors(quartic)
        assert series.qq.coefficients == (1, Fraction(-1, 8), Fraction(85, 2304))
        assert series.pp.coefficients == (1, Fraction(1, 8), Fraction(-17, 768))
        assert series.qp.coefficients == (0, 0, 0)
        assert series.qq.action_powers == (1, 2, 3)

    def test_mass_and_frequency_scaling(self):
        osc = QuarticOscillator(mass=2.0, omega0=0.5)
        series = classical_covariance_prefactors(osc)
        assert series.qq.coefficients[0] == 1
        assert series.qq.coefficients[1] == Fraction(-1, 8) / (8 * Fraction(1, 16))
        assert series.pp.coefficients[2] == Fraction(-17, 768) / (8 * Fraction(1, 32))

    def test_at_action(self, quartic):
        series = classical_covariance_series(quartic, 2.0)
        assert series.qq.coefficients == (2, Fraction(-1, 2), Fraction(85, 288))
        assert series.qq.action_powers is None

    def test_harmonic_limit(self):
        """At lambda = 0 the torus gives <q^2> = I/(m w0), <p^2> = m w0 I."""
        series = classical_covariance_series(QuarticOscillator(mass=1.5, omega0=2.0), 0.6)
        assert series.qq.evaluate(0.0) == pytest.approx(0.6 / 3.0)
        assert series.pp.evaluate(0.0) == pytest.approx(0.6 * 3.0)

    def test_negative_action(self, quartic):
        with pytest.raises(NegativeAction):
            classical_covariance_series(quartic, -1.0)


class TestQuantumSeries:
    """Test the ground-state moments."""

    def test_unit_coefficients(self, quartic):
        series = quantum_covariance_series(quartic)
        assert series.qq.coefficients == (Fraction(1, 2), Fraction(-1, 16), Fraction(35, 1536))
        assert series.pp.coefficients == (Fraction(1, 2), Fraction(1, 16), Fraction(-7, 512))

    def test_hbar_powers(self, quartic):
        series = quantum_covariance_series(quartic, hbar=0.5)
        assert series.qq.coefficients == (Fraction(1, 4), Fraction(-1, 64), Fraction(35, 12288))


class TestQuantization:
    """Test apply_quantization and the quantization rules."""

    @pytest.mark.parametrize("mass, omega0, hbar", [(1.0, 1.0, 1.0), (2.0, 1.5, 0.5), (0.75, 3.0, 2.0)])
    def test_rules_map_classical_onto_quantum(self, mass, omega0, hbar):
        osc = QuarticOscillator(mass=mass, omega0=omega0)
        quantized = apply_quantization(classical_covariance_prefactors(osc), hbar=hbar)
        expected = quantum_covariance_series(osc, hbar)
        assert quantized.qq.coefficients == expected.qq.coefficients
        assert quantized.pp.coefficients == expected.pp.coefficients
        assert quantized.qp.coefficients == expected.qp.coefficients

    def test_naive_rule_only_fixes_leading_order(self, quartic):
        """I^k -> (hbar/2)^k reproduces the harmonic term and nothing beyond it."""
        quantized = apply_quantization(classical_covariance_prefactors(quartic), QuantizationRules.naive())
        expected = quantum_covariance_series(quartic)
        assert quantized.qq.coefficients[0] == expected.qq.coefficients[0]
        assert quantized.qq.coefficients[1] == Fraction(-1, 32)
        assert quantized.qq.coefficients[2] != expected.qq.coefficients[2]

    def test_single_series(self, quartic):
        quantized = apply_quantization(classical_covariance_prefactors(quartic).pp)
        assert quantized.coefficients == (Fraction(1, 2), Fraction(1, 16), Fraction(-7, 512))

    def test_requires_action_powers(self):
        with pytest.raises(UnsupportedPower):
            apply_quantization(PerturbationSeries(order=1, coefficients=(1, 2)))

    def test_rejects_unexpected_power(self):
        series = PerturbationSeries(order=1, coefficients=(1, 2), action_powers=(1, 3))
        with pytest.raises(UnsupportedPower):
            apply_quantization(series)


class TestVarianceProduct:
    """Test the uncertainty product series."""

    def test_classical(self, quartic):
        series = variance_product_series(Side.CLASSICAL, quartic, 0.5)
        assert series.coefficients == (Fraction(1, 4), 0, Fraction(-1, 1152) / 16)

    def test_quantum(self, quartic):
        series = variance_product_series("quantum", quartic, 1.0)
        assert series.coefficients == (Fraction(1, 4), 0, Fraction(1, 1536))

    def test_sides_differ_in_sign(self, quartic):
        classical = variance_product_series(Side.CLASSICAL, quartic, 0.5).coefficients[2]
        quantum = variance_product_series(Side.QUANTUM, quartic, 1.0).coefficients[2]
        assert classical < 0 < quantum

    def test_first_order_vanishes_for_any_constants(self):
        osc = QuarticOscillator(mass=1.7, omega0=0.4)
        assert variance_product_series(Side.CLASSICAL, osc, 0.9).coefficients[1] == 0


class TestOrbitQuadrature:
    """Test the orbit-angle integrals."""

    def test_turning_point_harmonic(self, quartic):
        assert turning_point(quartic, 0.5) == pytest.approx(1.0, abs=1e-15)

    def test_turning_point_on_potential(self, quartic):
        osc = with_coupling(quartic, 0.8)
        q_max = turning_point(osc, 1.3)
        assert osc.potential(q_max) == pytest.approx(1.3, rel=1e-14)

    @pytest.mark.parametrize("energy", [0.0, -1.0, float("inf")])
    def test_no_turning_point(self, quartic, energy):
        with pytest.raises(NoTurningPoint):
            turning_point(quartic, energy)

    def test_harmonic_action_and_period(self):
        osc = QuarticOscillator(mass=1.0, omega0=2.0)
        assert action_from_energy(osc, 3.0) == pytest.approx(1.5, rel=1e-14)
        assert orbit_period(osc, 3.0) == pytest.approx(math.pi, rel=1e-14)

    def test_period_shortens_with_coupling(self, quartic):
        assert orbit_period(with_coupling(quartic, 0.5), 1.0) < 2 * math.pi

    @pytest.mark.parametrize("coupling", [0.0, 0.05, 0.5, 2.0])
    def test_energy_inverts_action(self, quartic, coupling):
        osc = with_coupling(quartic, coupling)
        energy = energy_from_action(osc, 0.5)
        assert action_from_energy(osc, energy) == pytest.approx(0.5, abs=1e-12)

    def test_energy_from_action_rejects_zero(self, quartic):
        with pytest.raises(NoTurningPoint):
            energy_from_action(quartic, 0.0)

    def test_bracket_failure(self, quartic, mocker):
        mocker.patch("torus_entropy.anharmonic.action_from_energy", return_value=0.0)
        with pytest.raises(RootBracketFailure):
            energy_from_action(quartic, 0.5, OracleConfig(max_bracket_expansions=5))

    def test_harmonic_averages(self):
        osc = QuarticOscillator(mass=2.0, omega0=0.5)
        averages = orbit_average(osc, 0.7)
        assert averages.q2 == pytest.approx(0.7, rel=1e-12)
        assert averages.p2 == pytest.approx(0.7, rel=1e-12)
        assert averages.energy == pytest.approx(0.35, rel=1e-12)

    def test_agrees_with_series_at_small_coupling(self, quartic):
        osc = with_coupling(quartic, 1e-3)
        averages = orbit_average(osc, 0.5)
        series = classical_covariance_series(quartic, 0.5)
        assert averages.q2 == pytest.approx(series.qq.evaluate(1e-3), abs=1e-9)
        assert averages.p2 == pytest.approx(series.pp.evaluate(1e-3), abs=1e-9)

    def test_first_order_coefficient(self, quartic):
        """A quadratic fit of <q^2>(lambda) recovers -I^2/8 at I = 1/2."""
        couplings = np.array([0.0, 2.5e-3, 5e-3, 7.5e-3, 1e-2])
        q2 = [orbit_average(with_coupling(quartic, lam), 0.5).q2 for lam in couplings]
        _, linear, constant = np.polyfit(couplings, q2, 2)
        assert constant == pytest.approx(0.5, abs=1e-10)
        assert linear == pytest.approx(-1.0 / 32.0, rel=0.01)

    def test_residual_is_third_order(self, quartic):
        couplings = np.geomspace(1e-3, 1e-2, 5)
        series = classical_covariance_series(quartic, 0.5)
        residuals = [
            orbit_average(with_coupling(quartic, lam), 0.5).q2 - series.qq.evaluate(lam)
            for lam in couplings
        ]
        assert residual_slope(couplings, residuals) == pytest.approx(3.0, abs=0.1)


def fake_trajectory(q_end, returns, success=True, message=""):
    """A solve_ivp result that keeps the energy of the I = 1/2 harmonic orbit."""
    return SimpleNamespace(
        success=success,
        message=message,
        t=np.array([0.0, 1.0]),
        y=np.array([[1.0, q_end], [0.0, 0.0], [0.0, 1.0], [0.0, 1.0], [0.0, 0.0]]),
        t_events=[np.asarray(returns, dtype=float)],
    )


class TestTrajectoryOracle:
    """Test the DOP853 time averages."""

    def test_harmonic(self, quartic):
        averages = time_average_oracle(quartic, 0.5)
        assert averages.q2 == pytest.approx(0.5, rel=1e-10)
        assert averages.p2 == pytest.approx(0.5, rel=1e-10)
        assert averages.qp == pytest.approx(0.0, abs=1e-10)
        assert averages.period == pytest.approx(2 * math.pi, rel=1e-12)
        assert averages.energy_drift < 1e-10

    def test_matches_orbit_quadrature(self, quartic):
        osc = with_coupling(quartic, 0.3)
        trajectory = time_average_oracle(osc, 0.5)
        quadrature = orbit_average(osc, 0.5)
        assert trajectory.q2 == pytest.approx(quadrature.q2, rel=1e-9)
        assert trajectory.p2 == pytest.approx(quadrature.p2, rel=1e-9)
        assert trajectory.period == pytest.approx(quadrature.period, rel=1e-11)

    @pytest.mark.parametrize("coupling", [0.0, 0.5, 5.0])
    def test_closing_time_is_the_period(self, quartic, coupling):
        """The return found on the trajectory agrees with the period integral."""
        osc = with_coupling(quartic, coupling)
        energy = energy_from_action(osc, 0.5)
        assert closing_time(osc, energy) == pytest.approx(orbit_period(osc, energy), rel=1e-11)

    def test_energy_drift_detected(self, quartic):
        cfg = OracleConfig(rtol=1e-3, atol=1e-6)
        with pytest.raises(EnergyDriftExceeded):
            time_average_oracle(with_coupling(quartic, 0.5), 0.5, cfg)

    def test_open_orbit_detected(self, quartic, mocker):
        """An end state on the far turning point keeps the energy but misses the start."""
        period = orbit_period(quartic, 0.5)
        mocker.patch(
            "torus_entropy.anharmonic.solve_ivp",
            return_value=fake_trajectory(-1.0, [0.0, period]),
        )
        with pytest.raises(OrbitNotClosed, match="misses its start"):
            time_average_oracle(quartic, 0.5)

    def test_no_return(self, quartic, mocker):
        """Only the start itself is a zero of p."""
        mocker.patch("torus_entropy.anharmonic.solve_ivp", return_value=fake_trajectory(1.0, [0.0]))
        with pytest.raises(OrbitNotClosed, match="never returned"):
            time_average_oracle(quartic, 0.5)

    def test_closing_time_disagrees_with_period(self, quartic, mocker):
        period = orbit_period(quartic, 0.5)
        mocker.patch(
            "torus_entropy.anharmonic.solve_ivp",
            return_value=fake_trajectory(1.0, [0.0, 1.01 * period]),
        )
        with pytest.raises(OrbitNotClosed, match="closes at"):
            time_average_oracle(quartic, 0.5)

    def test_integrator_failure(self, quartic, mocker):
        fake = fake_trajectory(1.0, [], success=False, message="step size too small")
        mocker.patch("torus_entropy.anharmonic.solve_ivp", return_value=fake)
        with pytest.raises(QuadratureFailure, match="step size"):
            time_average_oracle(quartic, 0.5)


class TestResidualSlope:
    """Test the log-log slope fit."""

    def test_exact_power(self):
        couplings = np.geomspace(1e-3, 1.0, 6)
        assert residual_slope(couplings, 0.2 * couplings**3) == pytest.approx(3.0, abs=1e-10)

    def test_sign_ignored_and_zero_coupling_skipped(self):
        couplings = [0.0, 0.1, 0.2, 0.4]
        residuals = [0.0, -1e-2, -4e-2, -1.6e-1]
        assert residual_slope(couplings, residuals) == pytest.approx(2.0, abs=1e-10)

    def test_too_few_points(self):
        with pytest.raises(QuadratureFailure):
            residual_slope([0.0, 0.1], [0.0, 1e-3])
