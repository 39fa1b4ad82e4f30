"""Reproductions of the published tables and their renderers."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from bounds.gap_bounds import (
    A_of_k,
    BoundResult,
    Provenance,
    Variant,
    lambda_full,
    lambda_mixed,
    ratio_with_provenance,
)
from constants.moments import b_mixed
from constants.opial import K_mixed_published
from constants.reference import load_reference

if TYPE_CHECKING:
    from constants.cache import CoefficientCache

FORMATS = ("csv", "json", "markdown")
DEFAULT_TOLERANCE = {
    "A": 1e-4,
    "K1k": 1e-4,
    "b_values": 0.0,
    "ratios": 0.0,
    "bounds_mixed": 1e-3,
    "bounds_full": 1e-3,
}
TABLES = tuple(DEFAULT_TOLERANCE)


@dataclass
class RunManifest:
    """What a command did and where its numbers came from.

    Attributes:
        command: Subcommand name.
        parameters: Effective parameters, stringified.
        outputs: Paths of written artifacts.
        provenance: One note per distinct source of the emitted numbers.
        wall_time: Seconds spent; kept out of rendered output.
    """

    command: str
    parameters: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def note(self, text: str) -> None:
        if text not in self.provenance:
            self.provenance.append(text)


@dataclass
class Table:
    """Rows of string cells under fixed columns."""

    name: str
    columns: tuple[str, ...]
    rows: list[dict[str, str]] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(row.get("pass", "yes") != "no" for row in self.rows)


def fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _numeric_row(
    key: str, k: int, computed: float, published: float, tolerance: float
) -> dict[str, str]:
    diff = abs(computed - published)
    return {
        key: str(k),
        "computed": f"{computed:.6f}",
        "published": f"{published:g}",
        "diff": f"{diff:.2e}",
        "pass": "yes" if diff <= tolerance else "no",
        "provenance": Provenance.COMPUTED.value,
    }


_NUMERIC_COLUMNS = ("k", "computed", "published", "diff", "pass", "provenance")


def table_A(manifest: RunManifest, tolerance: float) -> Table:
    table = Table("A", _NUMERIC_COLUMNS)
    for k, published in sorted(load_reference().A.items()):
        table.rows.append(_numeric_row("k", k, A_of_k(k), published, tolerance))
    manifest.note("A(k): computed from the Gamma function")
    return table


def table_K1k(manifest: RunManifest, tolerance: float) -> Table:
    table = Table("K1k", _NUMERIC_COLUMNS)
    for k, published in sorted(load_reference().K1.items()):
        computed = K_mixed_published(1, k)
        table.rows.append(_numeric_row("k", k, computed, published, tolerance))
    manifest.note("K(1,k): computed by quadrature")
    return table


def b_value_status(h: int, k: int) -> tuple[Fraction, Fraction, str]:
    """Recomputed b(h, k), the published value and 'exact' or 'mismatch'."""
    computed = b_mixed(h, k)
    published = load_reference().b[(h, k)]
    return computed, published, "exact" if computed == published else "mismatch"


def table_b_values(manifest: RunManifest, tolerance: float) -> Table:
    table = Table(
        "b_values", ("h", "k", "computed", "published", "match", "provenance")
    )
    for h, k in sorted(load_reference().b):
        computed, published, status = b_value_status(h, k)
        table.rows.append(
            {
                "h": str(h),
                "k": str(k),
                "computed": fraction_text(computed),
                "published": fraction_text(published),
                "match": status,
                "provenance": Provenance.COMPUTED.value,
            }
        )
    manifest.note("b(h,k): exact rationals from b(k) and H(h,k)")
    return table


def table_ratios(
    manifest: RunManifest,
    tolerance: float,
    *,
    allow_long: bool = False,
    cache: CoefficientCache | None = None,
) -> Table:
    table = Table("ratios", ("k", "computed", "published", "match", "provenance"))
    reference = load_reference()
    for k in sorted(reference.ratio):
        source = ratio_with_provenance(k, allow_long=allow_long, cache=cache)
        published = reference.ratio[k]
        if source.provenance is Provenance.PUBLISHED_FIXTURE:
            match = "fixture"
            manifest.note(f"b({k})/c({k}) from published fixture")
        else:
            match = "exact" if source.value == published else "mismatch"
        table.rows.append(
            {
                "k": str(k),
                "computed": fraction_text(source.value),
                "published": reference.ratio_text[k],
                "match": match,
                "provenance": source.provenance.value,
            }
        )
    manifest.note("b(k)/c(k): enumerated exactly where computed")
    return table


def table_bounds_mixed(manifest: RunManifest, tolerance: float) -> Table:
    table = Table("bounds_mixed", _NUMERIC_COLUMNS)
    for k, published in sorted(load_reference().mixed.items()):
        result = lambda_mixed(1, k, Variant.PUBLISHED)
        table.rows.append(_numeric_row("k", k, result.value, published, tolerance))
    manifest.note("Lambda*(1,k): published mixed constant, exact b(h,k) ratios")
    return table


def table_bounds_full(
    manifest: RunManifest,
    tolerance: float,
    *,
    allow_long: bool = False,
    cache: CoefficientCache | None = None,
) -> Table:
    table = Table("bounds_full", _NUMERIC_COLUMNS)
    for k, published in sorted(load_reference().full.items()):
        result = lambda_full(k, allow_long=allow_long, cache=cache)
        row = _numeric_row("k", k, result.value, published, tolerance)
        row["provenance"] = result.provenance.value
        if result.provenance is Provenance.PUBLISHED_FIXTURE:
            manifest.note(f"c({k}) from published fixture")
        table.rows.append(row)
    manifest.note("Lambda(k): computed where c(k) is enumerated")
    return table


def build_table(
    which: str,
    manifest: RunManifest,
    tolerance: float | None = None,
    *,
    allow_long: bool = False,
    cache: CoefficientCache | None = None,
) -> Table:
    """Build one named table.

    Raises:
        ValueError: For an unknown table name.
    """
    if which not in DEFAULT_TOLERANCE:
        raise ValueError(f"Unknown table {which!r}; choose from {', '.join(TABLES)}")
    tol = DEFAULT_TOLERANCE[which] if tolerance is None else tolerance
    builders: dict[str, Callable[[RunManifest, float], Table]] = {
        "A": table_A,
        "K1k": table_K1k,
        "b_values": table_b_values,
        "ratios": lambda m, t: table_ratios(
            m, t, allow_long=allow_long, cache=cache
        ),
        "bounds_mixed": table_bounds_mixed,
        "bounds_full": lambda m, t: table_bounds_full(
            m, t, allow_long=allow_long, cache=cache
        ),
    }
    manifest.parameters.setdefault("tolerance", f"{tol:g}")
    return builders[which](manifest, tol)


def bound_row(result: BoundResult) -> dict[str, str]:
    radicand = result.exact_radicand
    return {
        "method": result.method.value,
        "k": str(result.k),
        "h": "" if result.h is None else str(result.h),
        "variant": "" if result.variant is None else result.variant.value,
        "value": f"{result.value:.6f}",
        "hypothesis": result.hypothesis.value,
        "radicand": "" if radicand is None else fraction_text(radicand),
        "provenance": result.provenance.value,
        "note": result.note or result.label,
    }


BOUND_COLUMNS = (
    "method",
    "k",
    "h",
    "variant",
    "value",
    "hypothesis",
    "radicand",
    "provenance",
    "note",
)


def render(table: Table, fmt: str, manifest: RunManifest) -> str:
    """Render as csv, json or a markdown pipe table."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=table.columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(table.rows)
        return buffer.getvalue()
    if fmt == "json":
        document = {
            "command": manifest.command,
            "parameters": manifest.parameters,
            "rows": table.rows,
            "provenance": manifest.provenance,
        }
        return json.dumps(document, indent=2, sort_keys=True) + "\n"
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(table.columns) + " |",
            "|" + "|".join("---" for _ in table.columns) + "|",
        ]
        for row in table.rows:
            cells = (row.get(c, "") for c in table.columns)
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
        lines.extend(f"- {note}" for note in manifest.provenance)
        return "\n".join(lines) + "\n"
    raise ValueError(f"Unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
