"""Tests for zero scanning and gap statistics."""

from __future__ import annotations

import io
import math
from pathlib import Path

import numpy as np
import numpy.typing as npt
import pytest

from zlab.protocol import ZEvaluator
from zlab.riemann_siegel import hardy_z
from zlab.scan import (
    CSV_HEADER,
    FINITE_RANGE_LABEL,
    GapSummary,
    ScanConfig,
    ZeroScanner,
    ZeroTableError,
    build_records,
    count_constant,
    import_zero_table,
    match_zero_table,
    max_normalized_gap,
    riemann_von_mangoldt,
    scan_grid,
    scan_zeros,
    smooth_zero_count,
    write_zero_csv,
)

FIRST_ZEROS = [14.134725142, 21.022039639, 25.010857580, 30.424876126, 32.935061588]


class _Sine(ZEvaluator):
    """sin(t), failing above a cutoff."""

    def __init__(self, fail_above: float = math.inf) -> None:
        self._fail_above = fail_above

    @property
    def name(self) -> str:
        return "sine"

    def theta(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return np.zeros_like(np.asarray(t, dtype=np.float64))

    def z(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        values = np.asarray(t, dtype=np.float64)
        if values.size and float(values.max()) > self._fail_above:
            raise ValueError("out of range")
        return np.sin(values)


class TestScanConfig:
    """Tests for ScanConfig validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"t_start": 5.0, "t_end": 20.0},
            {"t_start": 50.0, "t_end": 20.0},
            {"t_start": 10.0, "t_end": 20.0, "grid_points_per_mean_spacing": 3},
            {"t_start": 10.0, "t_end": 20.0, "bisection_tolerance": 0.0},
        ],
    )
    def test_invalid(self, kwargs: dict[str, float]) -> None:
        """Test rejected ranges and resolutions."""
        with pytest.raises(ValueError):
            ScanConfig(**kwargs)  # type: ignore[arg-type]

    def test_split(self) -> None:
        """Test that sub-ranges are consecutive and cover the range."""
        parts = ScanConfig(10.0, 100.0).split(3)
        assert [p.t_start for p in parts] == pytest.approx([10.0, 40.0, 70.0])
        assert parts[-1].t_end == 100.0

    def test_grid(self) -> None:
        """Test the grid ends and spacing."""
        grid = scan_grid(ScanConfig(10.0, 20.0, grid_points_per_mean_spacing=8))
        assert grid[0] == 10.0 and grid[-1] == 20.0
        assert np.diff(grid)[0] == pytest.approx(2 * math.pi / (8 * math.log(10.0)))


class TestZeroScanner:
    """Tests for ZeroScanner."""

    def test_first_range(self) -> None:
        """Test the 29 zeros up to 100."""
        report = ZeroScanner().scan(ScanConfig(10.0, 100.0))
        assert len(report.records) == 29
        assert not report.coverage_gaps
        assert report.ordinates[:5] == pytest.approx(FIRST_ZEROS, abs=1e-4)
        assert count_constant(report.records, 100.0) < 1.0

    def test_no_sign_change_between_zeros(self) -> None:
        """Test that Z keeps one sign at eight midpoints between neighbours."""
        ordinates = ZeroScanner().scan(ScanConfig(10.0, 200.0)).ordinates
        previous_sign = 0.0
        for lo, hi in zip(ordinates, ordinates[1:]):
            midpoints = lo + (hi - lo) * (np.arange(8) + 0.5) / 8
            signs = np.sign(hardy_z(midpoints))
            assert np.all(signs == signs[0]), f"sign change inside ({lo}, {hi})"
            assert signs[0] != previous_sign
            previous_sign = float(signs[0])

    def test_count_envelope(self) -> None:
        """Test zero counts against the main term up to T = 1000."""
        records = ZeroScanner().scan(ScanConfig(10.0, 1000.0)).records
        for T in (150.0, 300.0, 500.0, 750.0, 1000.0):
            count = sum(1 for r in records if r.ordinate <= T)
            assert abs(count - riemann_von_mangoldt(T)) <= 10 * math.log(T)
            assert count_constant(records, T) <= 10.0
        assert len(records) == 649

    def test_parallel(self) -> None:
        """Test that splitting across processes finds the same zeros."""
        config = ScanConfig(10.0, 60.0)
        sequential = ZeroScanner().scan(config).ordinates
        parallel = ZeroScanner().scan(config, workers=2).ordinates
        assert parallel == pytest.approx(sequential, abs=1e-8)

    def test_scan_zeros(self) -> None:
        """Test the module-level helper."""
        records = scan_zeros(ScanConfig(10.0, 26.0))
        assert [r.ordinate for r in records] == pytest.approx(FIRST_ZEROS[:3], abs=1e-4)

    def test_custom_evaluator(self) -> None:
        """Test that any evaluator can be scanned."""
        report = ZeroScanner(_Sine()).scan(ScanConfig(10.0, 20.0))
        expected = [4 * math.pi, 5 * math.pi, 6 * math.pi]
        assert report.ordinates == pytest.approx(expected)

    def test_coverage_gap(self) -> None:
        """Test that a failing chunk is reported as a coverage gap."""
        ordinates, gaps = ZeroScanner(_Sine(fail_above=15.0)).ordinates(
            ScanConfig(10.0, 20.0)
        )
        assert ordinates == []
        assert gaps[0].t_lo == 10.0
        assert gaps[-1].t_hi == 20.0


class TestRecords:
    """Tests for gap records and statistics."""

    def test_build_records(self) -> None:
        """Test gaps and their two normalisations."""
        records = build_records(FIRST_ZEROS)
        first = records[0]
        gap = FIRST_ZEROS[1] - FIRST_ZEROS[0]
        assert first.index == 1
        assert first.gap == pytest.approx(gap)
        normalized = gap * math.log(FIRST_ZEROS[0]) / (2 * math.pi)
        assert first.normalized_gap == pytest.approx(normalized)
        assert first.unfolded_gap is not None
        assert first.unfolded_gap < first.normalized_gap
        assert records[-1].gap is None

    def test_not_increasing(self) -> None:
        """Test that repeated ordinates are refused."""
        with pytest.raises(ValueError):
            build_records([14.1, 14.1])

    def test_max_normalized_gap(self) -> None:
        """Test the largest normalized gap."""
        records = build_records(FIRST_ZEROS)
        expected = max(
            r.normalized_gap for r in records if r.normalized_gap is not None
        )
        assert max_normalized_gap(records) == expected
        with pytest.raises(ValueError):
            max_normalized_gap(records[:1])

    def test_summary(self) -> None:
        """Test that the summary is labelled as a finite-range statistic."""
        summary = GapSummary.from_records(build_records(FIRST_ZEROS))
        assert summary.count == 5
        assert summary.minimum <= summary.mean <= summary.maximum
        assert summary.label == FINITE_RANGE_LABEL

    def test_smooth_count(self) -> None:
        """Test theta(T)/pi + 1 near the true count at T = 100."""
        assert smooth_zero_count(100.0) == pytest.approx(29.0, abs=1.0)

    @pytest.mark.long
    def test_thousand_zeros(self) -> None:
        """Test that unfolded gaps average one over the first 1000 zeros."""
        records = scan_zeros(ScanConfig(10.0, 1450.0))[:1000]
        assert len(records) == 1000
        summary = GapSummary.from_records(records)
        assert summary.mean_unfolded == pytest.approx(1.0, abs=0.05)


class TestZeroTable:
    """Tests for zero table import, matching and export."""

    def test_import_text(self) -> None:
        """Test comments, blank lines and accepted sources."""
        text = "# zeros\n14.134725\n\n21.022040\n"
        assert import_zero_table(text) == [14.134725, 21.02204]
        assert import_zero_table(text.encode()) == [14.134725, 21.02204]
        assert import_zero_table(io.StringIO(text)) == [14.134725, 21.02204]

    @pytest.mark.parametrize(
        ("text", "line"),
        [("14.1\nabc\n", 2), ("21.0\n14.1\n", 2), ("nan\n", 1), ("# x\n\n1e999\n", 3)],
    )
    def test_import_errors(self, text: str, line: int) -> None:
        """Test that the first bad line is named."""
        with pytest.raises(ZeroTableError) as info:
            import_zero_table(text)
        assert info.value.line_number == line

    def test_import_undecodable(self) -> None:
        """Test that undecodable bytes are reported with their line."""
        with pytest.raises(ZeroTableError) as info:
            import_zero_table(b"14.134725\n21.022040\n\xff\xfe\n")
        assert info.value.line_number == 3
        with pytest.raises(ZeroTableError) as info:
            import_zero_table(io.BytesIO(b"# header\n\xff\n"))
        assert info.value.line_number == 2

    def test_match(self) -> None:
        """Test reporting table values with no scanned zero nearby."""
        records = build_records(FIRST_ZEROS[:2])
        assert match_zero_table(records, [14.1347, 25.0]) == [(25.0, FIRST_ZEROS[1])]

    def test_write_csv(self, tmp_path: Path) -> None:
        """Test the CSV header and row count."""
        target = tmp_path / "out" / "zeros.csv"
        path = write_zero_csv(build_records(FIRST_ZEROS), target)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 6
        assert lines[-1].endswith(",,,")
