"""
Integration tests for the quartic oscillator against the trajectory oracle.

These integrate Hamilton's equations over full periods and are slow.
"""

import json

import numpy as np
import pytest

from torus_entropy.anharmonic import (
    classical_covariance_series,
    orbit_average,
    residual_slope,
    time_average_oracle,
)
from torus_entropy.classes import QuarticOscillator
from torus_entropy.cli import main

pytestmark = [pytest.mark.integration, pytest.mark.slow]

ACTION = 0.5


def oscillator(coupling):
    return QuarticOscillator(mass=1.0, omega0=1.0, coupling=coupling)


class TestTrajectoryOracle:
    """The series and the trajectory oracle agree to the expected order."""

    def test_first_order_coefficient(self):
        """A quadratic fit of <q^2> over small couplings recovers -I^2/8."""
        couplings = np.array([0.0, 2.5e-3, 5e-3, 7.5e-3, 1e-2])
        q2 = [time_average_oracle(oscillator(lam), ACTION).q2 for lam in couplings]
        _, linear, constant = np.polyfit(couplings, q2, 2)

        assert constant == pytest.approx(ACTION, rel=1e-9)
        assert linear == pytest.approx(-ACTION**2 / 8.0, rel=0.01)

    def test_residual_slope(self):
        """Series residuals scale as lambda^3 over the decade below 1e-2."""
        series = classical_covariance_series(oscillator(0.0), ACTION)
        couplings = np.geomspace(1e-3, 1e-2, 5)
        residuals = [
            time_average_oracle(oscillator(lam), ACTION).q2 - series.qq.evaluate(lam)
            for lam in couplings
        ]
        assert residual_slope(couplings, residuals) == pytest.approx(3.0, abs=0.1)

    @pytest.mark.parametrize("coupling", [0.05, 0.5, 2.0])
    def test_agrees_with_orbit_quadrature(self, coupling):
        trajectory = time_average_oracle(oscillator(coupling), ACTION)
        quadrature = orbit_average(oscillator(coupling), ACTION)
        assert trajectory.q2 == pytest.approx(quadrature.q2, rel=1e-9)
        assert trajectory.p2 == pytest.approx(quadrature.p2, rel=1e-9)
        assert abs(trajectory.qp) < 1e-9


class TestVerifyCommand:
    """The anharmonic-verify command with the trajectory oracle."""

    def test_default_couplings(self, capsys):
        assert main(["anharmonic-verify", "--format", "json"]) == 0

        payload = json.loads(capsys.readouterr().out)
        assert [r["coupling"] for r in payload["rows"]] == [0.0, 0.005, 0.05, 0.5]
        assert all(r["success"] for r in payload["rows"])
        assert abs(payload["rows"][0]["residual"]) < 1e-10
        assert payload["slope"] == pytest.approx(3.0, abs=0.3)
