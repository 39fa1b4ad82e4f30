"""Tests for the Z-function evaluators."""

from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from zlab import protocol
from zlab.euler_maclaurin import EulerMaclaurinEvaluator
from zlab.riemann_siegel import (
    RiemannSiegelEvaluator,
    correction_polynomials,
    hardy_z,
    hardy_z_prime,
    psi_taylor,
    riemann_siegel_theta,
)


class TestTheta:
    """Tests for riemann_siegel_theta."""

    @pytest.mark.parametrize("t", [10.0, 100.0, 1234.5])
    def test_against_mpmath(self, t: float) -> None:
        """Test the asymptotic series against mpmath.siegeltheta."""
        assert float(riemann_siegel_theta(t)) == pytest.approx(
            float(mpmath.siegeltheta(t)), abs=1e-8
        )

    def test_slope(self) -> None:
        """Test theta'(t) ~ log(t / 2 pi) / 2."""
        h = 1e-3
        rise = riemann_siegel_theta(1000.0 + h) - riemann_siegel_theta(1000.0 - h)
        expected = 0.5 * math.log(1000 / (2 * math.pi))
        assert float(rise) / (2 * h) == pytest.approx(expected, abs=1e-4)

    def test_oracle_theta(self) -> None:
        """Test the mpmath evaluator's theta against the series."""
        oracle = EulerMaclaurinEvaluator()
        assert float(oracle.theta([200.0])[0]) == pytest.approx(
            float(riemann_siegel_theta(200.0)), abs=1e-8
        )

    def test_rejects_low_heights(self) -> None:
        """Test that t < 10 is refused."""
        with pytest.raises(ValueError):
            riemann_siegel_theta(5.0)


class TestCorrections:
    """Tests for the correction polynomials."""

    def test_psi_at_half(self) -> None:
        """Test Psi(1/2) = -cos(5 pi / 8)."""
        leading = -math.cos(5 * math.pi / 8)
        assert float(psi_taylor()[0]) == pytest.approx(leading, abs=1e-15)
        c0 = float(correction_polynomials()[0][-1])
        assert c0 == pytest.approx(0.38268343, abs=1e-8)

    def test_psi_series(self) -> None:
        """Test the series against a direct evaluation of Psi."""
        coefficients = [float(c) for c in psi_taylor()]
        p = 0.8
        phase = 2 * math.pi * (p * p - p - 1 / 16)
        direct = math.cos(phase) / math.cos(2 * math.pi * p)
        series = np.polyval(coefficients[::-1], p - 0.5)
        assert series == pytest.approx(direct, abs=1e-12)

    def test_read_only(self) -> None:
        """Test that the cached arrays cannot be modified."""
        polynomials = correction_polynomials()
        assert len(polynomials) == 5
        with pytest.raises(ValueError):
            polynomials[0][0] = 1.0

    def test_invalid_corrections(self) -> None:
        """Test the allowed number of correction terms."""
        with pytest.raises(ValueError):
            RiemannSiegelEvaluator(corrections=6)


class TestHardyZ:
    """Tests for hardy_z and hardy_z_prime."""

    @pytest.mark.parametrize("t", [50.0, 500.0, 5000.0])
    def test_against_euler_maclaurin(self, t: float) -> None:
        """Test Riemann-Siegel against the high-precision oracle."""
        oracle = EulerMaclaurinEvaluator()
        assert float(hardy_z(t)) == pytest.approx(float(oracle.z([t])[0]), abs=1e-5)

    @pytest.mark.parametrize("t", [60.0, 300.0])
    def test_against_mpmath(self, t: float) -> None:
        """Test against mpmath.siegelz."""
        assert float(hardy_z(t)) == pytest.approx(float(mpmath.siegelz(t)), abs=1e-5)

    def test_first_sign_change(self) -> None:
        """Test that Z changes sign around the first zero 14.1347."""
        values = hardy_z(np.array([14.0, 14.2]))
        assert values[0] * values[1] < 0

    def test_shape(self) -> None:
        """Test that array shape is preserved."""
        t = np.linspace(20.0, 40.0, 6).reshape(2, 3)
        assert hardy_z(t).shape == (2, 3)

    def test_fewer_corrections_close(self) -> None:
        """Test that dropping late corrections changes Z only slightly at height."""
        full = RiemannSiegelEvaluator().z_scalar(1000.0)
        two = RiemannSiegelEvaluator(corrections=2).z_scalar(1000.0)
        assert two == pytest.approx(full, abs=1e-4)

    @pytest.mark.parametrize("t", [60.0, 100.0])
    def test_derivative(self, t: float) -> None:
        """Test the central difference against mpmath."""
        expected = float(mpmath.siegelz(t, derivative=1))
        assert float(hardy_z_prime(t)) == pytest.approx(expected, abs=1e-3)

    @pytest.mark.parametrize("t", [50.0, 1000.0, 5000.0])
    def test_derivative_step_halved(
        self, t: float, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that halving the difference step leaves Z' in place."""
        coarse = float(hardy_z_prime(t))
        monkeypatch.setattr(protocol, "DERIVATIVE_STEP", protocol.DERIVATIVE_STEP / 2)
        fine = float(hardy_z_prime(t))
        assert fine == pytest.approx(coarse, abs=1e-5)

    def test_rejects_low_heights(self) -> None:
        """Test that t < 10 and non-finite t are refused."""
        with pytest.raises(ValueError):
            hardy_z(9.5)
        with pytest.raises(ValueError):
            hardy_z(np.array([20.0, np.nan]))
        with pytest.raises(ValueError):
            hardy_z_prime(10.0)
