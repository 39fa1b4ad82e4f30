"""Exact moment constants b(k), c(k), b(h, k) and H(h, k).

All values are ``fractions.Fraction``. The c(k) sum runs over C(3k, k) index
tuples; each term is scaled by a common denominator so the accumulation is
pure integer addition, which makes the result independent of summation
order and lets disjoint prefix ranges be summed in separate processes.
"""

from __future__ import annotations

import functools
import logging
import math
import time
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING

from constants.compositions import OrderMode, enumerate_compositions
from constants.reference import load_reference
from core.config import config

if TYPE_CHECKING:
    from constants.cache import CoefficientCache

logger = logging.getLogger(__name__)

# Terms per second of the pure-Python inner loop, for refusal messages.
_TERMS_PER_SECOND = 2.5e4

MAX_TABULATED_H = 7


class MRange(Enum):
    """Index range of the product M over 1 <= i, j <= k."""

    LOWER = "i<j"
    UPPER = "i>j"
    ALL = "i!=j"


@dataclass(frozen=True)
class Interpretation:
    """One reading of the tuple set and of the M product."""

    order_mode: OrderMode = OrderMode.ORDERED
    m_range: MRange = MRange.LOWER

    @property
    def label(self) -> str:
        return f"{self.order_mode.value}/{self.m_range.value}"


class MomentBudgetError(RuntimeError):
    """k is beyond the enumeration budget."""

    def __init__(self, k: int, limit: int, long_allowed: bool) -> None:
        terms = math.comb(3 * k, k)
        seconds = terms / _TERMS_PER_SECOND
        hint = "" if long_allowed else " (pass the long-running flag to raise it)"
        super().__init__(
            f"c({k}) needs {terms:,} terms (~{seconds / 3600:.1f} h at "
            f"{_TERMS_PER_SECOND:,.0f} terms/s); budget is k <= {limit}{hint}"
        )
        self.k = k
        self.terms = terms
        self.estimated_seconds = seconds


class InterpretationError(RuntimeError):
    """Lock-in did not single out exactly one interpretation."""

    def __init__(self, report: dict[str, dict[int, bool]]) -> None:
        lines = [f"{label}: {matches}" for label, matches in sorted(report.items())]
        super().__init__(
            "Expected exactly one interpretation matching the published ratios; "
            "got:\n" + "\n".join(lines)
        )
        self.report = report


class PoleError(ValueError):
    """H(h, k) evaluated where a denominator factor vanishes."""

    def __init__(self, h: int, a: int) -> None:
        super().__init__(f"H({h}, k) has a pole: factor K^2 - {a * a} vanishes")
        self.h = h
        self.a = a


@functools.lru_cache(maxsize=None)
def factorials(n: int) -> tuple[int, ...]:
    """0!, 1!, ..., n!."""
    table = [1] * (n + 1)
    for i in range(1, n + 1):
        table[i] = table[i - 1] * i
    return tuple(table)


def b_of_k(k: int) -> Fraction:
    """b(k) = prod_{j=0}^{k-1} j! / (j + k)!."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    fact = factorials(2 * k)
    value = Fraction(1)
    for j in range(k):
        value *= Fraction(fact[j], fact[j + k])
    return value


def _m_pairs(k: int, m_range: MRange) -> tuple[tuple[int, int], ...]:
    indices = range(1, k + 1)
    if m_range is MRange.LOWER:
        return tuple((i, j) for i in indices for j in indices if i < j)
    if m_range is MRange.UPPER:
        return tuple((i, j) for i in indices for j in indices if i > j)
    return tuple((i, j) for i in indices for j in indices if i != j)


def prefix_count(k: int, m0: int, order_mode: OrderMode) -> int:
    """Number of tuples sharing the prefix m_0 (ordered mode, exact)."""
    if order_mode is OrderMode.ORDERED:
        return math.comb(2 * k - m0 + k - 1, k - 1)
    return sum(1 for _ in enumerate_compositions(k, order_mode, first=m0))


def common_denominator(k: int) -> int:
    """D = 2^(2k) prod_{i=1}^{k} (4k - i)!, the scale making every term integral."""
    fact = factorials(4 * k)
    value = 1 << (2 * k)
    for i in range(1, k + 1):
        value *= fact[4 * k - i]
    return value


def prefix_sum(k: int, m0: int, order_mode: OrderMode, m_range: MRange) -> int:
    """D times the sum of all terms with first part m_0, as an integer.

    Each term is multinomial(2k; m) (-1/2)^(m_0) prod_i 1/(2k - i + m_i)!
    times the M product; after scaling by D it becomes
    multinomial (-1)^(m_0) 2^(2k - m_0) prod_i (4k - i)!/(2k - i + m_i)! M.
    """
    fact = factorials(4 * k)
    two_k = 2 * k
    # ratio[i][v] = (4k - i)! / (2k - i + v)!
    ratio = [
        [fact[4 * k - i] // fact[two_k - i + v] for v in range(two_k + 1)]
        if i
        else []
        for i in range(k + 1)
    ]
    pairs = _m_pairs(k, m_range)
    head = fact[two_k] // fact[m0] * (1 << (two_k - m0))
    if m0 % 2:
        head = -head

    total = 0
    for composition in enumerate_compositions(k, order_mode, first=m0):
        m = composition.parts
        product = 1
        for i, j in pairs:
            factor = m[j] - m[i] + i - j
            if factor == 0:
                product = 0
                break
            product *= factor
        if product == 0:
            continue
        term = head * product
        for i in range(1, k + 1):
            term *= ratio[i][m[i]]
        denominator = 1
        for part in m[1:]:
            denominator *= fact[part]
        total += term // denominator
    return total


@dataclass
class CoefficientEnumerator:
    """Exact evaluation of c(k) by enumeration of the index tuples.

    Attributes:
        k: Moment order.
        interpretation: Tuple set and M range to use.
        workers: Processes to fan the prefix ranges out to (1 = in-process).
    """

    k: int
    interpretation: Interpretation = field(default_factory=Interpretation)
    workers: int = 1

    def __post_init__(self) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)

    def prefixes(self) -> list[int]:
        return list(range(2 * self.k + 1))

    def _sequential(self) -> Iterable[tuple[int, int]]:
        mode, m_range = self.interpretation.order_mode, self.interpretation.m_range
        for m0 in self.prefixes():
            yield m0, prefix_sum(self.k, m0, mode, m_range)

    def _parallel(self) -> Iterable[tuple[int, int]]:
        mode, m_range = self.interpretation.order_mode, self.interpretation.m_range
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            futures = {
                m0: pool.submit(prefix_sum, self.k, m0, mode, m_range)
                for m0 in self.prefixes()
            }
            for m0, future in futures.items():
                yield m0, future.result()

    def run(self) -> Fraction:
        """Return c(k) as an exact rational."""
        k = self.k
        mode = self.interpretation.order_mode
        total_terms = sum(prefix_count(k, m0, mode) for m0 in self.prefixes())
        report_progress = k >= 9
        done = 0
        next_report = 0.05
        started = time.perf_counter()

        partials = self._parallel() if self.workers > 1 else self._sequential()
        accumulated = 0
        for m0, partial in partials:
            accumulated += partial
            done += prefix_count(k, m0, mode)
            if report_progress and done / total_terms >= next_report:
                self._logger.info(
                    "c(%d): %.0f%% of %d terms after %.1fs",
                    k,
                    100 * done / total_terms,
                    total_terms,
                    time.perf_counter() - started,
                )
                next_report = done / total_terms + 0.05

        sign = -1 if (k * (k + 1) // 2) % 2 else 1
        return Fraction(sign * accumulated, common_denominator(k))


def _check_budget(k: int, allow_long: bool) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    limit = config.moments.long_budget if allow_long else config.moments.ordered_budget
    if k > limit:
        raise MomentBudgetError(k, limit, long_allowed=allow_long)


def c_of_k(
    k: int,
    interpretation: Interpretation | None = None,
    *,
    allow_long: bool = False,
    workers: int | None = None,
    cache: CoefficientCache | None = None,
) -> Fraction:
    """c(k) from the sum over tuples m of 2k into k + 1 parts.

    Args:
        k: Moment order.
        interpretation: Tuple set and M range; the locked-in one by default.
        allow_long: Raise the budget from the default k to the long one.
        workers: Process count for the enumeration.
        cache: Optional on-disk cache consulted before and filled after.

    Raises:
        MomentBudgetError: If k is above the budget.
    """
    _check_budget(k, allow_long)
    interpretation = interpretation or lock_in_interpretation()
    if cache is not None:
        cached = cache.load(k, interpretation)
        if cached is not None:
            return cached

    started = time.perf_counter()
    enumerator = CoefficientEnumerator(
        k=k,
        interpretation=interpretation,
        workers=workers or config.moments.workers,
    )
    value = enumerator.run()
    if cache is not None:
        cache.store(k, interpretation, value, time.perf_counter() - started)
    return value


def candidate_interpretations() -> list[Interpretation]:
    return [Interpretation(mode, m_range) for mode in OrderMode for m_range in MRange]


def interpretation_report(ks: Iterable[int] = (1, 2, 3)) -> dict[str, dict[int, bool]]:
    """For every candidate, whether b(k)/c(k) equals the published ratio."""
    published = load_reference().ratio
    report: dict[str, dict[int, bool]] = {}
    for candidate in candidate_interpretations():
        matches: dict[int, bool] = {}
        for k in ks:
            c = CoefficientEnumerator(k=k, interpretation=candidate).run()
            matches[k] = c != 0 and b_of_k(k) / c == published[k]
        report[candidate.label] = matches
    return report


@functools.lru_cache(maxsize=1)
def lock_in_interpretation() -> Interpretation:
    """The unique interpretation reproducing the published ratios for k = 1, 2, 3.

    Raises:
        InterpretationError: Unless exactly one candidate matches everywhere.
    """
    report = interpretation_report()
    winners = [
        candidate
        for candidate in candidate_interpretations()
        if all(report[candidate.label].values())
    ]
    if len(winners) != 1:
        raise InterpretationError(report)
    logger.info("Locked in interpretation %s", winners[0].label)
    return winners[0]


def ratio_b_over_c(
    k: int,
    *,
    allow_long: bool = False,
    workers: int | None = None,
    cache: CoefficientCache | None = None,
) -> Fraction:
    """b(k)/c(k) under the locked-in interpretation, in lowest terms."""
    c = c_of_k(k, allow_long=allow_long, workers=workers, cache=cache)
    return b_of_k(k) / c


def H_rational(h: int, k: int | Fraction) -> Fraction:
    """Evaluate the tabulated H(h, k) at K = 2k.

    Raises:
        ValueError: If h is outside the tabulated range 0..7.
        PoleError: If K^2 equals a^2 for a denominator factor.
    """
    table = load_reference().H
    if h not in table:
        raise ValueError(f"H({h}, k) is tabulated only for 0 <= h <= {MAX_TABULATED_H}")
    function = table[h]
    X = Fraction(2 * k) ** 2
    for a in function.denominator:
        if X == a * a:
            raise PoleError(h, a)
    return function(X)


def b_mixed(h: int, k: int) -> Fraction:
    """b(h, k) = b(k) (2h)! / (8^h h!) H(h, k)."""
    if not 0 <= h <= min(k, MAX_TABULATED_H):
        raise ValueError(
            f"b(h, k) needs 0 <= h <= min(k, {MAX_TABULATED_H}), got h={h}, k={k}"
        )
    fact = factorials(2 * h)
    return b_of_k(k) * Fraction(fact[2 * h], 8**h * fact[h]) * H_rational(h, k)


def hall_ratio(h: int, k: int) -> Fraction:
    """R(h, k) = 4^(k - h) b(h, k) / b(k, k)."""
    return 4 ** (k - h) * b_mixed(h, k) / b_mixed(k, k)


def check_c_equals_b_kk(k: int, *, cache: CoefficientCache | None = None) -> bool:
    """Whether c(k) coincides with b(k, k); both lead the 2k-th moment of Z'."""
    return c_of_k(k, cache=cache) == b_mixed(k, k)


@dataclass(frozen=True)
class MonicFactor:
    """Predicted against tabulated exponent of (K^2 - a^2)."""

    a: int
    predicted: int
    actual: int

    @property
    def matches(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class MonicAudit:
    """Outcome of comparing H(h, k)'s denominator with the monic prediction.

    Attributes:
        h: Row of the table.
        factors: One entry per odd a examined.
        reconcilable: Every mismatch is a factor the prediction has in excess,
            so multiplying numerator and denominator by it restores agreement.
    """

    h: int
    factors: tuple[MonicFactor, ...]

    @property
    def mismatches(self) -> tuple[MonicFactor, ...]:
        return tuple(f for f in self.factors if not f.matches)

    @property
    def consistent(self) -> bool:
        return not self.mismatches

    @property
    def reconcilable(self) -> bool:
        return all(f.predicted > f.actual for f in self.mismatches)

    def adjustment(self) -> list[str]:
        return [
            f"introduce (K^2-{f.a * f.a})^{f.predicted - f.actual}"
            " in numerator and denominator"
            for f in self.mismatches
            if f.predicted > f.actual
        ]


def predicted_exponent(a: int, h: int) -> int:
    """Integer part of 4h / (a + sqrt(a^2 + 8h)), computed exactly."""
    n = 0
    while True:
        candidate = n + 1
        slack = 4 * h - candidate * a
        if slack < 0 or slack * slack < candidate * candidate * (a * a + 8 * h):
            return n
        n = candidate


def _root_multiplicity(coefficients: tuple[int, ...], root: int) -> int:
    """Multiplicity of X = root in an integer polynomial (highest degree first)."""
    poly = list(coefficients)
    multiplicity = 0
    while len(poly) > 1:
        quotient = [poly[0]]
        for c in poly[1:]:
            quotient.append(c + quotient[-1] * root)
        if quotient.pop() != 0:
            break
        poly = quotient
        multiplicity += 1
    return multiplicity


def audit_monic_denominator(h: int) -> MonicAudit:
    """Compare the tabulated denominator of H(h, k) with the monic prediction.

    Exponents of the table are reduced by any cancelling root of the
    numerator, so the comparison is against the reduced fraction.
    """
    table = load_reference().H
    if h not in table or h < 1:
        raise ValueError(f"audit needs 1 <= h <= {MAX_TABULATED_H}, got {h}")
    function = table[h]
    largest = max([2 * h - 1, *function.denominator])
    factors = []
    for a in range(1, largest + 1, 2):
        tabulated = function.denominator.get(a, 0)
        actual = max(0, tabulated - _root_multiplicity(function.numerator, a * a))
        predicted = predicted_exponent(a, h)
        factors.append(MonicFactor(a=a, predicted=predicted, actual=actual))
    audit = MonicAudit(h=h, factors=tuple(factors))
    if audit.mismatches:
        logger.info(
            "H(%d, k) denominator differs from prediction: %s", h, audit.mismatches
        )
    return audit
