"""Tests for the published reference file loader."""

from __future__ import annotations

from fractions import Fraction

import pytest

from constants.reference import (
    ReferenceFormatError,
    SquareFactorRational,
    load_reference,
    parse_product,
    parse_reference,
)


class TestParseProduct:
    """Tests for parse_product."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("1", 1), ("2^2*3", 12), ("2^6*3*5*7", 6720), ("31*2^12", 126976)],
    )
    def test_values(self, text: str, expected: int) -> None:
        """Test products of integer powers."""
        assert parse_product(text) == expected


class TestParseReference:
    """Tests for parse_reference."""

    def test_records(self) -> None:
        """Test one record of each kind."""
        tables = parse_reference(
            "# comment\n"
            "scalar K224 0.34613\n"
            "A 1 0.63662  # trailing comment\n"
            "b 1 2 1/720\n"
            "ratio 2 2^6*3*5*7 / 2^2*3\n"
            "H 2 num 1 den 1^1 3^1\n"
            "literature x lambda 1.9 RH\n"
        )
        assert tables.scalars["K224"] == 0.34613
        assert tables.A[1] == 0.63662
        assert tables.b[(1, 2)] == Fraction(1, 720)
        assert tables.ratio[2] == 560
        assert tables.ratio_text[2] == "2^6*3*5*7 / 2^2*3"
        assert tables.H[2](Fraction(16)) == Fraction(1, 105)
        assert tables.literature[0].hypothesis == "RH"

    @pytest.mark.parametrize(
        ("text", "line"),
        [
            ("A 1 0.5\nbogus 1\n", 2),
            ("\nratio 3 12\n", 2),
            ("H 1 num 1 den 2^1\n", 1),
            ("b 1 2 1/0\n", 1),
        ],
    )
    def test_errors_name_line(self, text: str, line: int) -> None:
        """Test that malformed lines are reported by number."""
        with pytest.raises(ReferenceFormatError) as info:
            parse_reference(text)
        assert info.value.line_number == line


class TestSquareFactorRational:
    """Tests for SquareFactorRational."""

    def test_evaluate(self) -> None:
        """Test (X - 33) / ((X - 1)^2 (X - 9)) at X = 64."""
        function = SquareFactorRational(numerator=(1, -33), denominator={1: 2, 3: 1})
        assert function.numerator_at(Fraction(64)) == 31
        assert function(Fraction(64)) == Fraction(31, 63 * 63 * 55)


class TestLoadReference:
    """Tests for the packaged reference file."""

    def test_extent(self) -> None:
        """Test that every published table is present."""
        tables = load_reference()
        assert sorted(tables.A) == list(range(1, 16))
        assert sorted(tables.full) == list(range(1, 16))
        assert sorted(tables.ratio) == list(range(1, 16))
        assert sorted(tables.mixed) == list(range(2, 8))
        assert sorted(tables.K1) == list(range(2, 8))
        assert sorted(tables.H) == list(range(0, 8))
        assert len(tables.b) == 12
        assert len(tables.literature) == 13

    def test_small_ratios(self) -> None:
        """Test the first ratios reduce as expected."""
        tables = load_reference()
        assert tables.ratio[1] == 12
        assert tables.ratio[2] == 560

    def test_cached(self) -> None:
        """Test that the file is parsed once."""
        assert load_reference() is load_reference()
