"""Zeros of Z(t) on the critical line and their normalized gaps.

Every statistic computed here describes a finite range of zeros. None of
them bounds the lim sup of normalized gaps.
"""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, TYPE_CHECKING

import numpy as np
from scipy import optimize

from core.config import config
from zlab.protocol import MIN_HEIGHT, ZEvaluator
from zlab.riemann_siegel import RiemannSiegelEvaluator, riemann_siegel_theta

if TYPE_CHECKING:
    import numpy.typing as npt

logger = logging.getLogger(__name__)

FINITE_RANGE_LABEL = "finite-range statistic, not a bound"
CSV_HEADER = ("index", "ordinate", "gap", "normalized_gap", "unfolded_gap")
MIN_GRID_DENSITY = 4
# Grid points evaluated per call into the evaluator.
_GRID_CHUNK = 20_000


class ZeroTableError(ValueError):
    """A zero table line is unparsable or out of order."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class ScanConfig:
    """Range and resolution of a zero scan.

    Attributes:
        t_start: Lower end, at least 10.
        t_end: Upper end, above t_start.
        grid_points_per_mean_spacing: Grid points per 2 pi / log t, at least 4.
        bisection_tolerance: Absolute tolerance on each refined ordinate.
    """

    t_start: float
    t_end: float
    grid_points_per_mean_spacing: int = config.scan.grid_density
    bisection_tolerance: float = config.scan.bisection_tol

    def __post_init__(self) -> None:
        if not self.t_start >= MIN_HEIGHT:
            raise ValueError(f"t_start must be >= {MIN_HEIGHT}, got {self.t_start}")
        if not self.t_end > self.t_start:
            raise ValueError(
                f"t_end ({self.t_end}) must exceed t_start ({self.t_start})"
            )
        if self.grid_points_per_mean_spacing < MIN_GRID_DENSITY:
            raise ValueError(
                f"Grid density must be >= {MIN_GRID_DENSITY}, "
                f"got {self.grid_points_per_mean_spacing}"
            )
        if not self.bisection_tolerance > 0:
            raise ValueError("Bisection tolerance must be positive")

    def split(self, segments: int) -> list[ScanConfig]:
        """Disjoint consecutive sub-ranges covering [t_start, t_end]."""
        edges = np.linspace(self.t_start, self.t_end, segments + 1)
        return [
            ScanConfig(
                float(lo),
                float(hi),
                self.grid_points_per_mean_spacing,
                self.bisection_tolerance,
            )
            for lo, hi in zip(edges[:-1], edges[1:], strict=True)
        ]


@dataclass(frozen=True)
class ZeroRecord:
    """One zero ordinate and the gap to its successor.

    Attributes:
        index: 1-based position by ascending ordinate.
        ordinate: The zero t_n.
        gap: t_{n+1} - t_n, None for the last record.
        normalized_gap: gap * log(t_n) / (2 pi).
        unfolded_gap: gap * log(t_n / 2 pi) / (2 pi), the gap in units of the
            local mean spacing.
    """

    index: int
    ordinate: float
    gap: float | None = None
    normalized_gap: float | None = None
    unfolded_gap: float | None = None


@dataclass(frozen=True)
class CoverageGap:
    """A stretch of the scan range where Z could not be evaluated."""

    t_lo: float
    t_hi: float
    reason: str


@dataclass
class ScanReport:
    """Zeros found together with any coverage gaps."""

    records: list[ZeroRecord]
    coverage_gaps: list[CoverageGap] = field(default_factory=list)

    @property
    def ordinates(self) -> list[float]:
        return [r.ordinate for r in self.records]


def mean_spacing(t: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """2 pi / log t."""
    return 2 * math.pi / np.log(np.asarray(t, dtype=np.float64))


def scan_grid(config: ScanConfig) -> npt.NDArray[np.float64]:
    """Points from t_start to t_end spaced (2 pi / log t) / density."""
    points = [config.t_start]
    density = config.grid_points_per_mean_spacing
    t = config.t_start
    while t < config.t_end:
        t = min(t + 2 * math.pi / (density * math.log(t)), config.t_end)
        points.append(t)
    return np.array(points, dtype=np.float64)


class ZeroScanner:
    """Grid scan for sign changes of Z refined by a bracketing root finder.

    Args:
        evaluator: Source of Z values; Riemann-Siegel by default.
    """

    def __init__(self, evaluator: ZEvaluator | None = None) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)
        self._evaluator = evaluator or RiemannSiegelEvaluator()

    def _values(self, grid: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        values = np.empty_like(grid)
        for start in range(0, grid.size, _GRID_CHUNK):
            chunk = grid[start : start + _GRID_CHUNK]
            try:
                values[start : start + _GRID_CHUNK] = self._evaluator.z(chunk)
            except (ValueError, ArithmeticError) as e:
                self._logger.warning(
                    "Evaluation failed on [%g, %g]: %s", chunk[0], chunk[-1], e
                )
                values[start : start + _GRID_CHUNK] = np.nan
        return values

    def ordinates(self, config: ScanConfig) -> tuple[list[float], list[CoverageGap]]:
        """Zero ordinates in [t_start, t_end] and the stretches left unscanned."""
        grid = scan_grid(config)
        values = self._values(grid)
        zeros: list[float] = []
        gaps: list[CoverageGap] = []

        exact = np.flatnonzero(values == 0.0)
        zeros.extend(float(grid[i]) for i in exact)

        for i in range(grid.size - 1):
            lo, hi = values[i], values[i + 1]
            if not (np.isfinite(lo) and np.isfinite(hi)):
                gap = CoverageGap(float(grid[i]), float(grid[i + 1]), "non-finite Z")
                gaps.append(gap)
                continue
            if lo * hi >= 0.0:
                continue
            try:
                root = optimize.brentq(
                    self._evaluator.z_scalar,
                    float(grid[i]),
                    float(grid[i + 1]),
                    xtol=config.bisection_tolerance,
                )
            except (ValueError, RuntimeError) as e:
                gaps.append(CoverageGap(float(grid[i]), float(grid[i + 1]), str(e)))
                continue
            zeros.append(float(root))

        for gap in _merge_gaps(gaps):
            self._logger.warning(
                "Coverage gap [%.6f, %.6f] (%s); zeros there are not reported",
                gap.t_lo,
                gap.t_hi,
                gap.reason,
            )
        return sorted(zeros), gaps

    def scan(self, config: ScanConfig, workers: int = 1) -> ScanReport:
        """Scan the range, fanning equal sub-ranges out to `workers` processes."""
        if workers <= 1:
            ordinates, gaps = self.ordinates(config)
        else:
            ordinates, gaps = [], []
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part, part_gaps in pool.map(self.ordinates, config.split(workers)):
                    ordinates.extend(part)
                    gaps.extend(part_gaps)
            ordinates = _dedupe(sorted(ordinates), config.bisection_tolerance)
        self._logger.info(
            "Found %d zeros in [%g, %g]", len(ordinates), config.t_start, config.t_end
        )
        return ScanReport(
            records=build_records(ordinates), coverage_gaps=_merge_gaps(gaps)
        )


def _dedupe(ordinates: list[float], tolerance: float) -> list[float]:
    kept: list[float] = []
    for t in ordinates:
        if not kept or t - kept[-1] > 10 * tolerance:
            kept.append(t)
    return kept


def _merge_gaps(gaps: Iterable[CoverageGap]) -> list[CoverageGap]:
    merged: list[CoverageGap] = []
    for gap in sorted(gaps, key=lambda g: g.t_lo):
        if merged and gap.t_lo <= merged[-1].t_hi:
            last = merged[-1]
            merged[-1] = CoverageGap(last.t_lo, max(last.t_hi, gap.t_hi), last.reason)
        else:
            merged.append(gap)
    return merged


def build_records(ordinates: Sequence[float]) -> list[ZeroRecord]:
    """ZeroRecords from ascending ordinates."""
    records = []
    for n, t in enumerate(ordinates):
        if n + 1 < len(ordinates):
            gap = ordinates[n + 1] - t
            if not gap > 0:
                raise ValueError(
                    f"Ordinates must be strictly increasing at index {n + 1}"
                )
            records.append(
                ZeroRecord(
                    index=n + 1,
                    ordinate=t,
                    gap=gap,
                    normalized_gap=gap * math.log(t) / (2 * math.pi),
                    unfolded_gap=gap * math.log(t / (2 * math.pi)) / (2 * math.pi),
                )
            )
        else:
            records.append(ZeroRecord(index=n + 1, ordinate=t))
    return records


def scan_zeros(config: ScanConfig, workers: int = 1) -> list[ZeroRecord]:
    """Zeros of Z in [t_start, t_end] with their gaps.

    Coverage gaps are logged as warnings; use ZeroScanner.scan for the full report.
    """
    return ZeroScanner().scan(config, workers=workers).records


def _gaps(records: Sequence[ZeroRecord], attribute: str) -> npt.NDArray[np.float64]:
    values = [getattr(r, attribute) for r in records]
    return np.array([v for v in values if v is not None], dtype=np.float64)


def max_normalized_gap(records: Sequence[ZeroRecord]) -> float:
    """Largest normalized gap; a finite-range statistic, not a bound.

    Raises:
        ValueError: With fewer than two records.
    """
    if len(records) < 2:
        raise ValueError("At least two zero records are needed for a gap")
    gaps = _gaps(records, "normalized_gap")
    if gaps.size == 0:
        raise ValueError("No gaps among the records")
    return float(gaps.max())


@dataclass(frozen=True)
class GapSummary:
    """Spread of normalized gaps over a finite range of zeros."""

    count: int
    minimum: float
    mean: float
    maximum: float
    std: float
    mean_unfolded: float
    max_unfolded: float
    label: str = FINITE_RANGE_LABEL

    @classmethod
    def from_records(cls, records: Sequence[ZeroRecord]) -> GapSummary:
        gaps = _gaps(records, "normalized_gap")
        unfolded = _gaps(records, "unfolded_gap")
        if gaps.size == 0:
            raise ValueError("At least two zero records are needed for a gap")
        return cls(
            count=len(records),
            minimum=float(gaps.min()),
            mean=float(gaps.mean()),
            maximum=float(gaps.max()),
            std=float(gaps.std()),
            mean_unfolded=float(unfolded.mean()),
            max_unfolded=float(unfolded.max()),
        )


def riemann_von_mangoldt(T: float) -> float:
    """Main term (T/2pi) log(T/2pi e) of the zero count up to T."""
    return T / (2 * math.pi) * math.log(T / (2 * math.pi * math.e))


def smooth_zero_count(T: float) -> float:
    """theta(T)/pi + 1."""
    return float(riemann_siegel_theta(T)) / math.pi + 1.0


def count_constant(records: Sequence[ZeroRecord], T: float) -> float:
    """C with |count(T) - main term| = C log T, counting zeros up to T.

    Assumes the records start at the first zero (t_start <= 14).
    """
    count = sum(1 for r in records if r.ordinate <= T)
    return abs(count - riemann_von_mangoldt(T)) / math.log(T)


def import_zero_table(source: bytes | str | IO[bytes] | IO[str]) -> list[float]:
    """Parse one ascending ordinate per line; '#' lines and blank lines are skipped.

    Raises:
        ZeroTableError: Naming the first unparsable or non-increasing line.
    """
    raw = source if isinstance(source, (bytes, str)) else source.read()

    ordinates: list[float] = []
    for number, line in enumerate(raw.splitlines(), start=1):
        if isinstance(line, bytes):
            try:
                text = line.decode("utf-8")
            except UnicodeDecodeError:
                raise ZeroTableError(number, "not valid UTF-8") from None
        else:
            text = line
        stripped = text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            value = float(stripped)
        except ValueError:
            raise ZeroTableError(number, f"not a number: {stripped!r}") from None
        if not math.isfinite(value):
            raise ZeroTableError(number, f"not finite: {stripped!r}")
        if ordinates and value <= ordinates[-1]:
            raise ZeroTableError(number, f"{value} does not exceed {ordinates[-1]}")
        ordinates.append(value)
    return ordinates


def match_zero_table(
    records: Sequence[ZeroRecord], table: Sequence[float], tolerance: float = 1e-3
) -> list[tuple[float, float]]:
    """Pairs (table value, nearest scanned ordinate) farther apart than tolerance."""
    scanned = np.array([r.ordinate for r in records], dtype=np.float64)
    mismatches = []
    for value in table:
        if scanned.size == 0:
            mismatches.append((value, math.nan))
            continue
        nearest = float(scanned[np.argmin(np.abs(scanned - value))])
        if abs(nearest - value) > tolerance:
            mismatches.append((value, nearest))
    return mismatches


def write_zero_csv(records: Sequence[ZeroRecord], path: Path) -> Path:
    """Write records under the header index,ordinate,gap,normalized_gap,unfolded_gap."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [
                    r.index,
                    repr(r.ordinate),
                    "" if r.gap is None else repr(r.gap),
                    "" if r.normalized_gap is None else repr(r.normalized_gap),
                    "" if r.unfolded_gap is None else repr(r.unfolded_gap),
                ]
            )
    return path
