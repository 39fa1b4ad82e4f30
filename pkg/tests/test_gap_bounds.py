"""Tests for the gap bounds."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from bounds.gap_bounds import (
    A_of_k,
    A_reflection_form,
    BoundResult,
    Hypothesis,
    Method,
    Provenance,
    Variant,
    compare_with_literature,
    gamma_real,
    hall_reference,
    lambda_boyd_unconditional,
    lambda_full,
    lambda_mixed,
    lambda_wirtinger_unconditional,
    literature_bounds,
    mixed_discrepancy,
    ratio_with_provenance,
)
from constants.cache import CoefficientCache
from constants.moments import b_of_k, lock_in_interpretation
from constants.reference import load_reference


class TestGamma:
    """Tests for the Gamma helpers and A(k)."""

    def test_gamma_real(self) -> None:
        """Test Gamma at a half integer and a positive integer."""
        assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi))
        assert gamma_real(5.0) == pytest.approx(24.0)

    @pytest.mark.parametrize("x", [0.0, -1.5])
    def test_gamma_real_rejects(self, x: float) -> None:
        """Test that non-positive arguments are refused."""
        with pytest.raises(ValueError):
            gamma_real(x)

    def test_A1(self) -> None:
        """Test A(1) = 2/pi."""
        assert A_of_k(1) == pytest.approx(2 / math.pi, abs=1e-12)

    @pytest.mark.parametrize("k", range(1, 16))
    def test_A_matches_published(self, k: int) -> None:
        """Test A(k) against the published four-place values."""
        assert A_of_k(k) == pytest.approx(load_reference().A[k], abs=1e-4)

    @pytest.mark.parametrize("k", [1, 4, 15])
    def test_forms_agree(self, k: int) -> None:
        """Test that the two closed forms coincide."""
        assert A_reflection_form(k) == pytest.approx(A_of_k(k), abs=1e-10)

    def test_invalid_k(self) -> None:
        """Test k < 1."""
        with pytest.raises(ValueError):
            A_of_k(0)


class TestUnconditional:
    """Tests for the Wirtinger and Boyd bounds."""

    def test_wirtinger(self) -> None:
        """Test the Wirtinger bound and its exact radicand."""
        result = lambda_wirtinger_unconditional()
        assert result.value == pytest.approx(1.6529, abs=1e-3)
        assert result.exact_radicand == Fraction(28, 3)
        assert result.hypothesis is Hypothesis.RH
        assert "assumes RH" in result.note

    def test_wirtinger_given_constant(self) -> None:
        """Test the closed form for a supplied K."""
        result = lambda_wirtinger_unconditional(K=0.34613)
        expected = math.sqrt(28 / 3 / 0.34613) / math.pi
        assert result.value == pytest.approx(expected, rel=1e-12)

    def test_boyd(self) -> None:
        """Test the Boyd bound."""
        result = lambda_boyd_unconditional()
        assert result.value == pytest.approx(2.2635, abs=1e-3)
        assert result.exact_radicand == 560
        assert result.root_degree == 4

    def test_boyd_given_constant(self) -> None:
        """Test 560^(1/4) / 2 for A = 2/pi."""
        result = lambda_boyd_unconditional(A=2 / math.pi)
        assert result.value == pytest.approx(2.4323, abs=1e-4)

    def test_boyd_is_full_k2(self) -> None:
        """Test that Boyd's bound coincides with the k = 2 full bound."""
        assert lambda_full(2).value == pytest.approx(
            lambda_boyd_unconditional().value, rel=1e-12
        )


class TestMixed:
    """Tests for the mixed bounds."""

    @pytest.mark.parametrize("k", range(2, 8))
    def test_published(self, k: int) -> None:
        """Test Lambda*(1, k) against the published values."""
        result = lambda_mixed(1, k, Variant.PUBLISHED)
        assert result.value == pytest.approx(load_reference().mixed[k], abs=1e-3)
        assert result.hypothesis is Hypothesis.RH_PLUS_MOMENTS

    def test_derived_reduces_to_wirtinger(self) -> None:
        """Test that the derived constant at (1, 2) gives the Wirtinger bound."""
        derived = lambda_mixed(1, 2, Variant.DERIVED)
        assert derived.value == pytest.approx(
            lambda_wirtinger_unconditional().value, rel=1e-6
        )

    def test_discrepancy(self) -> None:
        """Test the published and derived constants at (1, 2)."""
        discrepancy = mixed_discrepancy(1, 2)
        assert discrepancy.K_published == pytest.approx(0.23961, abs=1e-4)
        assert discrepancy.K_derived == pytest.approx(0.34613, abs=1e-4)
        assert discrepancy.published.value > discrepancy.derived.value
        assert "published form" in discrepancy.describe()

    @pytest.mark.parametrize(("h", "k"), [(2, 2), (0, 3), (3, 2), (1, 8)])
    def test_invalid(self, h: int, k: int) -> None:
        """Test that h = k and out-of-range indices are refused."""
        with pytest.raises(ValueError):
            lambda_mixed(h, k)


class TestFull:
    """Tests for the full conditional bound."""

    @pytest.mark.parametrize("k", range(1, 8))
    def test_computed(self, k: int) -> None:
        """Test enumerated orders against the published values."""
        result = lambda_full(k)
        assert result.provenance is Provenance.COMPUTED
        assert result.value == pytest.approx(load_reference().full[k], abs=1e-3)

    @pytest.mark.parametrize("k", range(9, 16))
    def test_fixture(self, k: int) -> None:
        """Test orders beyond the quick limit fall back to the published ratio."""
        result = lambda_full(k)
        assert result.provenance is Provenance.PUBLISHED_FIXTURE
        assert result.value == pytest.approx(load_reference().full[k], abs=1e-3)

    def test_headline(self) -> None:
        """Test Lambda(15)."""
        assert lambda_full(15).value == pytest.approx(6.1392, abs=1e-3)

    def test_increasing(self) -> None:
        """Test that the bound grows with k."""
        values = [lambda_full(k).value for k in range(1, 8)]
        assert values == sorted(values)

    def test_cached_counts_as_computed(self, cache: CoefficientCache) -> None:
        """Test that a cached c(k) above the quick limit is used."""
        published = load_reference().ratio[9]
        cache.store(9, lock_in_interpretation(), b_of_k(9) / published, 0.0)
        source = ratio_with_provenance(9, cache=cache)
        assert source.provenance is Provenance.COMPUTED
        assert source.value == published

    @pytest.mark.parametrize("k", [0, 16])
    def test_invalid(self, k: int) -> None:
        """Test k outside 1..15."""
        with pytest.raises(ValueError):
            lambda_full(k)


class TestBoundResult:
    """Tests for BoundResult validation."""

    def test_recompute(self) -> None:
        """Test that the stored radicand reproduces the value."""
        result = lambda_full(3)
        assert result.recompute() == pytest.approx(result.value, rel=1e-12)

    def test_inconsistent_radicand(self) -> None:
        """Test that a value disagreeing with its radicand is refused."""
        with pytest.raises(ValueError):
            BoundResult(
                method=Method.HALL_REFERENCE,
                value=3.0,
                hypothesis=Hypothesis.RH,
                exact_radicand=Fraction(4),
                root_degree=2,
            )

    def test_nonpositive(self) -> None:
        """Test that a bound must be positive."""
        with pytest.raises(ValueError):
            BoundResult(method=Method.LITERATURE, value=0.0, hypothesis=Hypothesis.RH)

    def test_mixed_needs_h(self) -> None:
        """Test that a mixed bound without h is refused."""
        with pytest.raises(ValueError):
            BoundResult(
                method=Method.MIXED_CONDITIONAL,
                value=2.0,
                hypothesis=Hypothesis.RH_PLUS_MOMENTS,
                k=3,
            )

    def test_no_radicand(self) -> None:
        """Test recompute without an exact radicand."""
        with pytest.raises(ValueError):
            literature_bounds()[0].recompute()


class TestLiterature:
    """Tests for the reference bound and the literature comparison."""

    def test_hall(self) -> None:
        """Test sqrt(7533/901)."""
        result = hall_reference()
        assert result.value == pytest.approx(2.8915, abs=1e-4)
        assert result.exact_radicand == Fraction(7533, 901)
        assert result.hypothesis is Hypothesis.RH_PLUS_MOMENTS

    def test_literature(self) -> None:
        """Test the prior bounds are loaded with their hypotheses."""
        bounds = literature_bounds()
        assert len(bounds) == 13
        assert {b.hypothesis for b in bounds} == set(Hypothesis)

    def test_hypothesis_order(self) -> None:
        """Test which assumption sets contain which."""
        assert Hypothesis.UNCONDITIONAL.implied_by(Hypothesis.RH)
        assert Hypothesis.RH.implied_by(Hypothesis.GRH)
        assert Hypothesis.RH.implied_by(Hypothesis.RH_PLUS_MOMENTS)
        assert not Hypothesis.GRH.implied_by(Hypothesis.RH_PLUS_MOMENTS)

    def test_headline_improves(self) -> None:
        """Test Lambda(15) against comparable prior bounds."""
        comparison = compare_with_literature(lambda_full(15))
        assert comparison.improves
        assert comparison.best_prior is not None
        assert comparison.best_prior.label == "hall-k7-improved"
        assert all(
            c.hypothesis is not Hypothesis.GRH for c in comparison.candidates
        )

    def test_wirtinger_does_not_improve(self) -> None:
        """Test the Wirtinger bound against prior bounds assuming at most RH."""
        comparison = compare_with_literature(lambda_wirtinger_unconditional())
        assert not comparison.improves
        assert comparison.best_prior is not None
        assert comparison.best_prior.label == "bmn"
        assert all(
            c.hypothesis in (Hypothesis.RH, Hypothesis.UNCONDITIONAL)
            for c in comparison.candidates
        )

    def test_reference_bound_needs_moments(self) -> None:
        """Test that the reference bound only meets moment-conditional results."""
        rh_only = compare_with_literature(lambda_boyd_unconditional())
        assert "hall-wirtinger" not in {c.label for c in rh_only.candidates}
        conditional = compare_with_literature(lambda_full(3))
        assert "hall-wirtinger" in {c.label for c in conditional.candidates}


class TestTagAliases:
    """Tests for the alternative tag spellings."""

    def test_variant(self) -> None:
        """Test that paper names the published variant."""
        assert Variant("paper") is Variant.PUBLISHED
        assert Variant("derived") is Variant.DERIVED
        with pytest.raises(ValueError):
            Variant("paper-fixture")

    def test_provenance(self) -> None:
        """Test that paper-fixture names the published fixture."""
        assert Provenance("paper-fixture") is Provenance.PUBLISHED_FIXTURE
        with pytest.raises(ValueError):
            Provenance("paper")

    def test_hypothesis_tag(self) -> None:
        """Test the emitted hypothesis spelling."""
        assert Hypothesis.RH_PLUS_MOMENTS.value == "RH_plus_moment_conjectures"
        assert lambda_full(1).hypothesis.value == "RH_plus_moment_conjectures"
