"""Enumeration of the index tuples m = (m_0, ..., m_k) summing to 2k."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum


class OrderMode(Enum):
    """How the tuples m are read.

    Attributes:
        ORDERED: Every ordered tuple (weak compositions).
        NONDECREASING: Sorted tuples only (partitions padded with zeros).
    """

    ORDERED = "ordered"
    NONDECREASING = "nondecreasing"


@dataclass(frozen=True)
class Composition:
    """One tuple m_0, ..., m_k of nonnegative parts summing to 2k."""

    parts: tuple[int, ...]
    order_mode: OrderMode

    def __post_init__(self) -> None:
        if any(m < 0 for m in self.parts):
            raise ValueError(f"Negative part in {self.parts}")
        k = len(self.parts) - 1
        if k < 1 or sum(self.parts) != 2 * k:
            raise ValueError(f"{self.parts} is not a tuple of k+1 parts summing to 2k")
        if self.order_mode is OrderMode.NONDECREASING and list(self.parts) != sorted(
            self.parts
        ):
            raise ValueError(f"{self.parts} is not nondecreasing")

    @property
    def k(self) -> int:
        return len(self.parts) - 1


def weak_compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    """Yield every ordered tuple of `slots` nonnegative ints summing to `total`.

    Stars and bars: choosing slots - 1 bar positions among total + slots - 1.
    """
    if slots == 0:
        if total == 0:
            yield ()
        return
    width = total + slots - 1
    for bars in itertools.combinations(range(width), slots - 1):
        previous = -1
        parts = []
        for bar in bars:
            parts.append(bar - previous - 1)
            previous = bar
        parts.append(width - previous - 1)
        yield tuple(parts)


def nondecreasing_tuples(
    total: int, slots: int, floor: int = 0
) -> Iterator[tuple[int, ...]]:
    """Yield sorted tuples of `slots` ints >= floor summing to `total`."""
    if slots == 1:
        if total >= floor:
            yield (total,)
        return
    for first in range(floor, total // slots + 1):
        for rest in nondecreasing_tuples(total - first, slots - 1, first):
            yield (first, *rest)


def enumerate_compositions(
    k: int, order_mode: OrderMode, first: int | None = None
) -> Iterator[Composition]:
    """Yield each tuple (m_0, ..., m_k) summing to 2k exactly once.

    Args:
        k: Moment order, k >= 1.
        order_mode: Ordered tuples or nondecreasing ones.
        first: If given, only the tuples with m_0 == first.

    Returns:
        Iterator of Composition; C(3k, k) items in ordered mode.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if first is None:
        heads: Iterable[int] = range(2 * k + 1)
    elif 0 <= first <= 2 * k:
        heads = (first,)
    else:
        raise ValueError(f"first part must lie in 0..{2 * k}, got {first}")
    for m0 in heads:
        if order_mode is OrderMode.ORDERED:
            tails = weak_compositions(2 * k - m0, k)
        else:
            tails = nondecreasing_tuples(2 * k - m0, k, m0)
        for tail in tails:
            yield Composition(parts=(m0, *tail), order_mode=order_mode)


def count_ordered(k: int) -> int:
    """Number of ordered tuples, C(3k, k)."""
    return math.comb(3 * k, k)
