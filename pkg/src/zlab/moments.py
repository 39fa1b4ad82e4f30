"""Numerical fourth-power moments of Z against their leading asymptotics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from bounds.gap_bounds import MOMENT_COEFFICIENTS, MOMENT_LOG_POWERS
from core.config import config
from zlab.protocol import MIN_HEIGHT, ZEvaluator, derivative_step
from zlab.riemann_siegel import RiemannSiegelEvaluator

logger = logging.getLogger(__name__)

T_MIN = 1e2
T_MAX = 1e6
# Intervals per Simpson chunk (even).
_CHUNK_INTERVALS = 100_000
LOWER_LIMIT_NOTE = "integration starts at t = 10; the omitted [0, 10] contributes O(1)"
CONVERGENCE_NOTE = (
    "error terms are one power of log T down; the ratio tends to 1 slowly"
)


class MomentKind(Enum):
    """Which moment integrand.

    Attributes:
        Z4: Z^4.
        Zp4: Z'^4.
        Z2Zp2: Z^2 Z'^2.
    """

    Z4 = "Z4"
    Zp4 = "Zp4"
    Z2Zp2 = "Z2Zp2"


@dataclass(frozen=True)
class MomentEstimate:
    """A moment integral next to its predicted leading term."""

    kind: MomentKind
    T: float
    integral: float
    predicted_leading: float
    ratio: float
    grid_density: int
    t_lower: float = MIN_HEIGHT
    notes: tuple[str, ...] = (LOWER_LIMIT_NOTE, CONVERGENCE_NOTE)


def predicted_leading(kind: MomentKind, T: float) -> float:
    """coefficient / pi^2 * T * log(T)^power."""
    coefficient = float(MOMENT_COEFFICIENTS[kind.value])
    return coefficient / math.pi**2 * T * math.log(T) ** MOMENT_LOG_POWERS[kind.value]


def _integrand(
    evaluator: ZEvaluator, kind: MomentKind, t: np.ndarray
) -> np.ndarray:
    if kind is MomentKind.Z4:
        return evaluator.z(t) ** 4
    delta = derivative_step(t)
    forward, backward = evaluator.z(t + delta), evaluator.z(t - delta)
    derivative = (forward - backward) / (2 * delta)
    if kind is MomentKind.Zp4:
        return derivative**4
    return evaluator.z(t) ** 2 * derivative**2


def moment_integral(
    kind: MomentKind,
    T: float,
    grid_density: int | None = None,
    evaluator: ZEvaluator | None = None,
) -> MomentEstimate:
    """Composite Simpson integral of the chosen moment over [10, T].

    The step is at most (2 pi / log T) / grid_density.

    Raises:
        ValueError: If T is outside [1e2, 1e6].
    """
    if not T_MIN <= T <= T_MAX:
        raise ValueError(f"T must lie in [{T_MIN:g}, {T_MAX:g}], got {T}")
    density = grid_density or config.scan.grid_density
    evaluator = evaluator or RiemannSiegelEvaluator()
    # Z'(t) needs Z at t - delta, so start a hair above 10.
    lower = MIN_HEIGHT + float(derivative_step(MIN_HEIGHT))
    step = 2 * math.pi / math.log(T) / density
    intervals = math.ceil((T - lower) / step)
    intervals += intervals % 2
    grid = np.linspace(lower, T, intervals + 1)

    total = 0.0
    for start in range(0, intervals, _CHUNK_INTERVALS):
        stop = min(start + _CHUNK_INTERVALS, intervals)
        x = grid[start : stop + 1]
        total += float(integrate.simpson(_integrand(evaluator, kind, x), x=x))
    predicted = predicted_leading(kind, T)
    logger.info(
        "%s moment to T=%g: %.6g (ratio %.4f)", kind.value, T, total, total / predicted
    )
    return MomentEstimate(
        kind=kind,
        T=T,
        integral=total,
        predicted_leading=predicted,
        ratio=total / predicted,
        grid_density=density,
        t_lower=lower,
    )
