from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    import numpy.typing as npt

MIN_HEIGHT = 10.0
# Central-difference step for Z', as a fraction of the mean zero spacing.
DERIVATIVE_STEP = 1e-4


def check_height(
    t: npt.ArrayLike, minimum: float = MIN_HEIGHT
) -> npt.NDArray[np.float64]:
    """Return t as a float array, rejecting heights below `minimum`."""
    values = np.asarray(t, dtype=np.float64)
    if values.size and (not np.all(np.isfinite(values)) or np.min(values) < minimum):
        raise ValueError(f"Heights must be finite and >= {minimum}")
    return values


def derivative_step(t: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """delta = 1e-4 * 2 pi / log t."""
    return DERIVATIVE_STEP * 2 * math.pi / np.log(np.asarray(t, dtype=np.float64))


class ZEvaluator(ABC):
    """Abstract evaluator of the Hardy Z-function on the critical line."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Short identifier for reports."""

    @abstractmethod
    def theta(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Riemann-Siegel theta function."""

    @abstractmethod
    def z(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t."""

    def z_prime(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Z'(t) by central differences.

        Truncation error is O(delta^2 |Z'''|) with delta = 1e-4 * 2 pi / log t.
        """
        values = check_height(t)
        delta = derivative_step(values)
        check_height(values - delta)
        return (self.z(values + delta) - self.z(values - delta)) / (2 * delta)

    def z_scalar(self, t: float) -> float:
        return float(self.z(np.array([t]))[0])
