"""Explicit lower bounds for the normalized gap statistic Lambda.

Every bound here has the shape value = (radicand * multiplier)^(1 / degree),
with an exact rational radicand built from moment constants and a floating
multiplier carrying the Opial or Gamma constant and the powers of pi.
Results record which hypotheses they rest on so that conditional and
unconditional claims never get mixed up in a report.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, TypeVar

from scipy import special

from constants.moments import (
    MAX_TABULATED_H,
    b_mixed,
    b_of_k,
    c_of_k,
    lock_in_interpretation,
)
from constants.opial import (
    K_mixed_derived,
    K_mixed_published,
    OpialTriple,
    boyd_K,
    mixed_L,
)
from constants.reference import load_reference
from core.config import config

if TYPE_CHECKING:
    from constants.cache import CoefficientCache
    from core.quadrature import QuadratureSpec

logger = logging.getLogger(__name__)

MAX_FULL_K = 15
# Largest k whose c(k) is enumerated without the long-running flag.
QUICK_COMPUTE_LIMIT = 8
RECOMPUTE_TOLERANCE = 1e-12

# Leading coefficients (units of 1/pi^2) of the second-order moments of Z:
# int Z^4 ~ T log^4 T / (2 pi^2), int Z'^4 ~ T log^8 T / (1120 pi^2),
# int Z^2 Z'^2 ~ T log^6 T / (120 pi^2).
MOMENT_COEFFICIENTS: dict[str, Fraction] = {
    "Z4": Fraction(1, 2),
    "Zp4": Fraction(1, 1120),
    "Z2Zp2": Fraction(1, 120),
}
MOMENT_LOG_POWERS: dict[str, int] = {"Z4": 4, "Zp4": 8, "Z2Zp2": 6}


class Method(Enum):
    """Which argument produced a bound."""

    WIRTINGER_UNCONDITIONAL = "wirtinger_unconditional"
    BOYD_UNCONDITIONAL = "boyd_unconditional"
    MIXED_CONDITIONAL = "mixed_conditional"
    FULL_CONDITIONAL = "full_conditional"
    HALL_REFERENCE = "hall_reference"
    LITERATURE = "literature"


class Hypothesis(Enum):
    """Assumptions a bound rests on.

    Attributes:
        UNCONDITIONAL: No unproved hypothesis.
        RH: The Riemann hypothesis.
        GRH: The generalized Riemann hypothesis.
        RH_PLUS_MOMENTS: RH together with the random-matrix moment conjectures.
    """

    UNCONDITIONAL = "unconditional"
    RH = "RH"
    GRH = "GRH"
    RH_PLUS_MOMENTS = "RH_plus_moment_conjectures"

    @property
    def assumptions(self) -> frozenset[str]:
        return _ASSUMPTIONS[self]

    def implied_by(self, other: Hypothesis) -> bool:
        """True if everything assumed here is also assumed by `other`."""
        return self.assumptions <= other.assumptions


_ASSUMPTIONS = {
    Hypothesis.UNCONDITIONAL: frozenset(),
    Hypothesis.RH: frozenset({"RH"}),
    Hypothesis.GRH: frozenset({"RH", "GRH"}),
    Hypothesis.RH_PLUS_MOMENTS: frozenset({"RH", "moments"}),
}


class Provenance(Enum):
    """Where an exact radicand came from."""

    COMPUTED = "computed"
    PUBLISHED_FIXTURE = "published-fixture"

    @classmethod
    def _missing_(cls, value: object) -> Provenance | None:
        return _alias(cls, PROVENANCE_ALIASES, value)


class Variant(Enum):
    """Which mixed Opial constant to use."""

    PUBLISHED = "published"
    DERIVED = "derived"

    @classmethod
    def _missing_(cls, value: object) -> Variant | None:
        return _alias(cls, VARIANT_ALIASES, value)


PROVENANCE_ALIASES = {"paper-fixture": "published-fixture"}
VARIANT_ALIASES = {"paper": "published"}

_E = TypeVar("_E", bound=Enum)


def _alias(cls: type[_E], aliases: dict[str, str], value: object) -> _E | None:
    if isinstance(value, str) and value in aliases:
        return cls(aliases[value])
    return None


@dataclass(frozen=True)
class BoundResult:
    """One lower bound for Lambda.

    Attributes:
        method: Argument that produced the bound.
        value: The bound.
        hypothesis: Assumptions it rests on.
        k: Moment order, 0 when not applicable.
        h: Mixed index, only for mixed bounds.
        exact_radicand: Exact rational under the root, when known.
        root_degree: Degree of the root taken.
        multiplier: Floating factor applied to the radicand before the root.
        provenance: Source of the radicand.
        variant: Mixed constant variant, only for mixed bounds.
        label: Short identifier (literature entries).
        note: Free-text caveat carried into reports.
    """

    method: Method
    value: float
    hypothesis: Hypothesis
    k: int = 0
    h: int | None = None
    exact_radicand: Fraction | None = None
    root_degree: int = 1
    multiplier: float = 1.0
    provenance: Provenance = Provenance.COMPUTED
    variant: Variant | None = None
    label: str = ""
    note: str = ""

    def __post_init__(self) -> None:
        if not self.value > 0:
            raise ValueError(f"Bound must be positive, got {self.value}")
        if self.method is Method.MIXED_CONDITIONAL and (
            self.h is None or not 1 <= self.h < self.k
        ):
            raise ValueError(
                f"Mixed bound needs 1 <= h < k, got h={self.h}, k={self.k}"
            )
        if self.method is Method.FULL_CONDITIONAL and self.k < 1:
            raise ValueError(f"Full bound needs k >= 1, got {self.k}")
        if self.exact_radicand is not None:
            again = self.recompute()
            if abs(again - self.value) > RECOMPUTE_TOLERANCE * self.value:
                raise ValueError(
                    f"value {self.value!r} does not recompute from radicand ({again!r})"
                )

    def recompute(self) -> float:
        """(radicand * multiplier)^(1/degree) from the stored exact radicand."""
        if self.exact_radicand is None:
            raise ValueError("No exact radicand to recompute from")
        return _root(self.exact_radicand, self.multiplier, self.root_degree)


def _root(radicand: Fraction, multiplier: float, degree: int) -> float:
    return float((float(radicand) * multiplier) ** (1.0 / degree))


def gamma_real(x: float) -> float:
    """Gamma(x) for x > 0.

    Raises:
        ValueError: If x <= 0.
    """
    if not x > 0:
        raise ValueError(f"gamma_real needs x > 0, got {x}")
    return float(special.gamma(x))


def A_gamma_form(k: int) -> float:
    """(2k/(2k-1))^(1/2k) (2k)^((2k-1)/2k) / (Gamma(1/2k) Gamma((2k-1)/2k))."""
    two_k = 2 * k
    prefactor = (two_k / (two_k - 1)) ** (1 / two_k) * two_k ** ((two_k - 1) / two_k)
    return prefactor / (gamma_real(1 / two_k) * gamma_real((two_k - 1) / two_k))


def A_reflection_form(k: int) -> float:
    """Same constant with Gamma(x)Gamma(1 - x) = pi / sin(pi x)."""
    two_k = 2 * k
    prefactor = (two_k / (two_k - 1)) ** (1 / two_k) * two_k ** ((two_k - 1) / two_k)
    return prefactor * math.sin(math.pi / two_k) / math.pi


def A_of_k(k: int) -> float:
    """A(k); the Gamma and reflection forms must agree to 1e-10.

    Example:
        >>> round(A_of_k(1), 5)
        0.63662
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    gamma_form = A_gamma_form(k)
    reflection = A_reflection_form(k)
    if abs(gamma_form - reflection) > 1e-10:
        raise RuntimeError(
            f"A({k}) forms disagree: {gamma_form!r} vs {reflection!r}"
        )
    return gamma_form


def lambda_wirtinger_unconditional(
    K: float | None = None, spec: QuadratureSpec | None = None
) -> BoundResult:
    """(1/pi) sqrt(112 / (12 K(2,2,4))) from the second-order moments of Z and Z'."""
    if K is None:
        K = boyd_K(OpialTriple(2, 2, 4), spec).K_value
    radicand = MOMENT_COEFFICIENTS["Z2Zp2"] / MOMENT_COEFFICIENTS["Zp4"]
    multiplier = 1.0 / (K * math.pi**2)
    return BoundResult(
        method=Method.WIRTINGER_UNCONDITIONAL,
        value=_root(radicand, multiplier, 2),
        hypothesis=Hypothesis.RH,
        exact_radicand=radicand,
        root_degree=2,
        multiplier=multiplier,
        note="titled unconditional; the argument assumes RH",
    )


def lambda_boyd_unconditional(A: float | None = None) -> BoundResult:
    """(1/(pi A(2))) 560^(1/4), with 560 the ratio of the Z^4 and Z'^4 moments."""
    if A is None:
        A = A_of_k(2)
    radicand = MOMENT_COEFFICIENTS["Z4"] / MOMENT_COEFFICIENTS["Zp4"]
    multiplier = (math.pi * A) ** -4
    return BoundResult(
        method=Method.BOYD_UNCONDITIONAL,
        value=_root(radicand, multiplier, 4),
        hypothesis=Hypothesis.RH,
        k=2,
        exact_radicand=radicand,
        root_degree=4,
        multiplier=multiplier,
        note="titled unconditional; the argument assumes RH",
    )


def _mixed_K(h: int, k: int, variant: Variant, spec: QuadratureSpec | None) -> float:
    if variant is Variant.PUBLISHED:
        return K_mixed_published(h, k, spec)
    return K_mixed_derived(h, k, spec)


def lambda_mixed(
    h: int,
    k: int,
    variant: Variant = Variant.PUBLISHED,
    spec: QuadratureSpec | None = None,
) -> BoundResult:
    """(1/pi) (b(h,k) / (b(k,k) K(h,k)))^(1/(2k-2h)).

    Raises:
        ValueError: Unless 1 <= h < k <= 7.
    """
    if h == k:
        raise ValueError("h = k is excluded from the mixed bound")
    if not 1 <= h < k <= MAX_TABULATED_H:
        raise ValueError(
            f"Mixed bound needs 1 <= h < k <= {MAX_TABULATED_H}, got h={h}, k={k}"
        )
    radicand = b_mixed(h, k) / b_mixed(k, k)
    K = _mixed_K(h, k, variant, spec)
    degree = 2 * k - 2 * h
    multiplier = 1.0 / (K * math.pi**degree)
    return BoundResult(
        method=Method.MIXED_CONDITIONAL,
        value=_root(radicand, multiplier, degree),
        hypothesis=Hypothesis.RH_PLUS_MOMENTS,
        k=k,
        h=h,
        exact_radicand=radicand,
        root_degree=degree,
        multiplier=multiplier,
        variant=variant,
    )


@dataclass(frozen=True)
class MixedDiscrepancy:
    """The two mixed constants side by side.

    K_published / K_derived = k^(2h) / ((k - h) L + h)^(2h).
    """

    h: int
    k: int
    K_published: float
    K_derived: float
    published: BoundResult
    derived: BoundResult

    @property
    def K_ratio(self) -> float:
        return self.K_published / self.K_derived

    def describe(self) -> str:
        return (
            f"K({self.h},{self.k}) published form {self.K_published:.5f} vs "
            f"K(2k-2h,2h,2k) {self.K_derived:.5f} (ratio {self.K_ratio:.5f}); "
            f"bounds {self.published.value:.4f} vs {self.derived.value:.4f}"
        )


def mixed_discrepancy(
    h: int, k: int, spec: QuadratureSpec | None = None
) -> MixedDiscrepancy:
    published = lambda_mixed(h, k, Variant.PUBLISHED, spec)
    derived = lambda_mixed(h, k, Variant.DERIVED, spec)
    K_published = K_mixed_published(h, k, spec)
    K_derived = K_mixed_derived(h, k, spec)
    expected = k ** (2 * h) / ((k - h) * mixed_L(h, k, spec) + h) ** (2 * h)
    if abs(K_published / K_derived - expected) > 1e-9 * expected:
        logger.warning("Mixed constant ratio for (%d, %d) off its closed form", h, k)
    return MixedDiscrepancy(
        h=h,
        k=k,
        K_published=K_published,
        K_derived=K_derived,
        published=published,
        derived=derived,
    )


@dataclass(frozen=True)
class RatioSource:
    """b(k)/c(k) together with where it came from."""

    value: Fraction
    provenance: Provenance


def ratio_with_provenance(
    k: int,
    *,
    allow_long: bool = False,
    cache: CoefficientCache | None = None,
    workers: int | None = None,
) -> RatioSource:
    """b(k)/c(k), enumerated when affordable, otherwise the published fixture.

    Enumeration runs for k <= 8, or up to the configured ordered budget with
    `allow_long`. A cached c(k) counts as computed whatever k is.
    """
    if not 1 <= k <= MAX_FULL_K:
        raise ValueError(f"b(k)/c(k) is available for 1 <= k <= {MAX_FULL_K}, got {k}")
    limit = config.moments.ordered_budget if allow_long else QUICK_COMPUTE_LIMIT
    if k > limit and cache is not None:
        cached = cache.load(k, lock_in_interpretation())
        if cached is not None:
            return RatioSource(b_of_k(k) / cached, Provenance.COMPUTED)
    if k <= limit:
        c = c_of_k(k, allow_long=allow_long, workers=workers, cache=cache)
        return RatioSource(b_of_k(k) / c, Provenance.COMPUTED)
    logger.info("Using the published b(%d)/c(%d) ratio", k, k)
    return RatioSource(load_reference().ratio[k], Provenance.PUBLISHED_FIXTURE)


def lambda_full(
    k: int,
    *,
    allow_long: bool = False,
    cache: CoefficientCache | None = None,
    workers: int | None = None,
) -> BoundResult:
    """(1/(pi A(k))) (b(k)/c(k))^(1/2k).

    Raises:
        ValueError: If k is outside 1..15.
    """
    if not 1 <= k <= MAX_FULL_K:
        raise ValueError(f"Full bound is available for 1 <= k <= {MAX_FULL_K}, got {k}")
    source = ratio_with_provenance(
        k, allow_long=allow_long, cache=cache, workers=workers
    )
    multiplier = (math.pi * A_of_k(k)) ** (-2 * k)
    return BoundResult(
        method=Method.FULL_CONDITIONAL,
        value=_root(source.value, multiplier, 2 * k),
        hypothesis=Hypothesis.RH_PLUS_MOMENTS,
        k=k,
        exact_radicand=source.value,
        root_degree=2 * k,
        multiplier=multiplier,
        provenance=source.provenance,
    )


def hall_reference() -> BoundResult:
    """sqrt(7533/901), the Wirtinger-type bound kept for comparison.

    It needs the predicted leading term of the mixed moment of Z and Z', so
    it rests on the moment conjectures as well as RH.
    """
    radicand = Fraction(7533, 901)
    return BoundResult(
        method=Method.HALL_REFERENCE,
        value=_root(radicand, 1.0, 2),
        hypothesis=Hypothesis.RH_PLUS_MOMENTS,
        exact_radicand=radicand,
        root_degree=2,
        label="hall-wirtinger",
    )


def literature_bounds() -> list[BoundResult]:
    """Previously published lower bounds, in file order."""
    return [
        BoundResult(
            method=Method.LITERATURE,
            value=entry.value,
            hypothesis=Hypothesis(entry.hypothesis),
            label=entry.ident,
            note=f"bound on {entry.statistic}",
        )
        for entry in load_reference().literature
    ]


@dataclass(frozen=True)
class Comparison:
    """A bound measured against the best prior one it may be compared with."""

    result: BoundResult
    best_prior: BoundResult | None
    candidates: tuple[BoundResult, ...] = field(default=())

    @property
    def improves(self) -> bool:
        return self.best_prior is None or self.result.value > self.best_prior.value


def compare_with_literature(result: BoundResult) -> Comparison:
    """Compare against prior bounds whose hypotheses are no stronger."""
    prior = [
        other
        for other in (*literature_bounds(), hall_reference())
        if other.hypothesis.implied_by(result.hypothesis)
    ]
    best = max(prior, key=lambda other: other.value, default=None)
    return Comparison(result=result, best_prior=best, candidates=tuple(prior))
