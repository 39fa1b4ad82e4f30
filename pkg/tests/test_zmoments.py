"""Tests for the numerical moments of Z."""

from __future__ import annotations

import math

import pytest

from zlab.moments import MomentKind, moment_integral, predicted_leading


class TestMomentIntegral:
    """Tests for moment_integral."""

    @pytest.mark.parametrize("T", [50.0, 2e6])
    def test_range(self, T: float) -> None:
        """Test that T outside [1e2, 1e6] is refused."""
        with pytest.raises(ValueError):
            moment_integral(MomentKind.Z4, T)

    @pytest.mark.parametrize("kind", list(MomentKind))
    def test_positive(self, kind: MomentKind) -> None:
        """Test that each moment is positive and annotated."""
        estimate = moment_integral(kind, 200.0)
        assert estimate.integral > 0
        expected = estimate.integral / estimate.predicted_leading
        assert estimate.ratio == pytest.approx(expected)
        assert estimate.t_lower > 10.0
        assert len(estimate.notes) == 2

    @pytest.mark.parametrize("kind", list(MomentKind))
    def test_monotone_in_T(self, kind: MomentKind) -> None:
        """Test that the integral grows with the upper limit."""
        values = [moment_integral(kind, T).integral for T in (150.0, 300.0, 600.0)]
        assert values == sorted(values)
        assert values[0] > 0

    def test_density_convergence(self) -> None:
        """Test that doubling the grid barely moves the integral."""
        coarse = moment_integral(MomentKind.Z4, 300.0, grid_density=10)
        fine = moment_integral(MomentKind.Z4, 300.0, grid_density=20)
        assert fine.integral == pytest.approx(coarse.integral, rel=1e-2)

    def test_predicted_leading(self) -> None:
        """Test T log^4 T / (2 pi^2) for the fourth moment."""
        T = 1e4
        expected = 0.5 / math.pi**2 * T * math.log(T) ** 4
        assert predicted_leading(MomentKind.Z4, T) == pytest.approx(expected)

    @pytest.mark.long
    def test_fourth_moment_order(self) -> None:
        """Test that the fourth moment has the predicted order at T = 1e5."""
        estimate = moment_integral(MomentKind.Z4, 1e5)
        assert 0.4 <= estimate.ratio <= 2.5
