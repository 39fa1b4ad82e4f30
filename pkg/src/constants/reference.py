"""Loader for the checked-in published reference values.

The grammar is documented at the top of ``data/reference_values.txt``; this
module turns that file into typed tables. Nothing here computes anything:
these are the published numbers that computed values are compared with,
and the fixture source for b(k)/c(k) when k is beyond the enumeration
budget.
"""

from __future__ import annotations

import dataclasses
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

REFERENCE_FILE = "reference_values.txt"


class ReferenceFormatError(ValueError):
    """A line of the reference file does not follow the grammar."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class SquareFactorRational:
    """A rational function of X = K^2 with denominator prod (X - a^2)^e.

    Attributes:
        numerator: Integer coefficients in X, highest degree first.
        denominator: Map odd a -> exponent e of (X - a^2).
    """

    numerator: tuple[int, ...]
    denominator: dict[int, int]

    def numerator_at(self, X: Fraction) -> Fraction:
        value = Fraction(0)
        for coefficient in self.numerator:
            value = value * X + coefficient
        return value

    def __call__(self, X: Fraction) -> Fraction:
        den = Fraction(1)
        for a, e in self.denominator.items():
            den *= (X - a * a) ** e
        return self.numerator_at(X) / den


@dataclass(frozen=True)
class LiteratureEntry:
    """A previously published lower bound quoted for comparison."""

    ident: str
    statistic: str
    value: float
    hypothesis: str


@dataclass(frozen=True)
class ReferenceTables:
    """Typed view of the reference file."""

    scalars: dict[str, float] = field(default_factory=dict)
    A: dict[int, float] = field(default_factory=dict)
    K1: dict[int, float] = field(default_factory=dict)
    b: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    mixed: dict[int, float] = field(default_factory=dict)
    full: dict[int, float] = field(default_factory=dict)
    ratio: dict[int, Fraction] = field(default_factory=dict)
    ratio_text: dict[int, str] = field(default_factory=dict)
    H: dict[int, SquareFactorRational] = field(default_factory=dict)
    literature: tuple[LiteratureEntry, ...] = ()


def parse_product(text: str) -> int:
    """Evaluate a '*'-joined product of integers and powers p^e."""
    value = 1
    for factor in text.split("*"):
        base, _, exponent = factor.partition("^")
        value *= int(base) ** (int(exponent) if exponent else 1)
    return value


def _parse_line(
    tables: ReferenceTables, literature: list[LiteratureEntry], tokens: list[str]
) -> None:
    kind, args = tokens[0], tokens[1:]
    if kind == "scalar":
        tables.scalars[args[0]] = float(args[1])
    elif kind in ("A", "K1", "mixed", "full"):
        target: dict[int, float] = getattr(tables, kind)
        target[int(args[0])] = float(args[1])
    elif kind == "b":
        tables.b[(int(args[0]), int(args[1]))] = Fraction(args[2])
    elif kind == "ratio":
        k = int(args[0])
        numerator, slash, denominator = " ".join(args[1:]).partition("/")
        if not slash:
            raise ValueError("ratio needs '<product> / <product>'")
        tables.ratio[k] = Fraction(
            parse_product(numerator.strip()), parse_product(denominator.strip())
        )
        tables.ratio_text[k] = f"{numerator.strip()} / {denominator.strip()}"
    elif kind == "H":
        h = int(args[0])
        if "num" not in args or "den" not in args:
            raise ValueError("H needs 'num' and 'den' sections")
        num_at, den_at = args.index("num"), args.index("den")
        coefficients = tuple(int(c) for c in args[num_at + 1 : den_at])
        factors: dict[int, int] = {}
        for item in args[den_at + 1 :]:
            a, _, e = item.partition("^")
            if int(a) % 2 == 0:
                raise ValueError(f"denominator factor a={a} must be odd")
            factors[int(a)] = int(e) if e else 1
        tables.H[h] = SquareFactorRational(numerator=coefficients, denominator=factors)
    elif kind == "literature":
        literature.append(
            LiteratureEntry(
                ident=args[0],
                statistic=args[1],
                value=float(args[2]),
                hypothesis=args[3],
            )
        )
    else:
        raise ValueError(f"unknown record kind {kind!r}")


def parse_reference(text: str) -> ReferenceTables:
    """Parse reference file content.

    Raises:
        ReferenceFormatError: On the first malformed line.
    """
    tables = ReferenceTables()
    literature: list[LiteratureEntry] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            _parse_line(tables, literature, line.split())
        except (ValueError, IndexError, ZeroDivisionError) as e:
            raise ReferenceFormatError(number, str(e)) from e
    return dataclasses.replace(tables, literature=tuple(literature))


@functools.lru_cache(maxsize=1)
def load_reference() -> ReferenceTables:
    """Load the packaged reference file (read once, then shared read-only)."""
    data = resources.files("constants").joinpath("data")
    text = data.joinpath(REFERENCE_FILE).read_text(encoding="utf-8")
    return parse_reference(text)
