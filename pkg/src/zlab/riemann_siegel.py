"""Vectorised Riemann-Siegel evaluation of theta(t) and Z(t).

Z(t) = 2 sum_{n <= N} n^(-1/2) cos(theta - t log n)
       + (-1)^(N-1) (t/2pi)^(-1/4) sum_j C_j(p) (t/2pi)^(-j/2),

with N = floor(sqrt(t/2pi)) and p its fractional remainder. The correction
coefficients C_0..C_4 are combinations of derivatives of
Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p). Psi is entire, so its Taylor
series about p = 1/2 is computed once in high precision and every C_j becomes
a plain polynomial in z = p - 1/2.
"""

from __future__ import annotations

import functools
import logging
import math
from typing import TYPE_CHECKING

import mpmath
import numpy as np

from zlab.protocol import ZEvaluator, check_height

if TYPE_CHECKING:
    import numpy.typing as npt

logger = logging.getLogger(__name__)

SERIES_DEGREE = 80
SERIES_DIGITS = 120
MAX_CORRECTIONS = 5
# Caps the (points x terms) cosine matrix evaluated per chunk.
_CHUNK_CELLS = 2_000_000

# C_j = sum of numerator / (denominator pi^(2e)) Psi^(m), one (m, numerator,
# denominator, e) per term.
_CORRECTION_TERMS: tuple[tuple[tuple[int, int, int, int], ...], ...] = (
    ((0, 1, 1, 0),),
    ((3, -1, 96, 1),),
    ((2, 1, 64, 1), (6, 1, 18432, 2)),
    ((1, -1, 64, 1), (5, -1, 3840, 2), (9, -1, 5308416, 3)),
    ((0, 1, 128, 1), (4, 19, 24576, 2), (8, 11, 5898240, 3), (12, 1, 2038431744, 4)),
)


def psi_taylor(
    degree: int = SERIES_DEGREE, digits: int = SERIES_DIGITS
) -> list[mpmath.mpf]:
    """Taylor coefficients of Psi about p = 1/2, in z = p - 1/2.

    Psi(1/2 + z) = -cos(2 pi z^2 - 5 pi / 8) / cos(2 pi z); both series are
    exact, and their quotient is formed by power-series division.
    """
    with mpmath.workdps(digits):
        two_pi = 2 * mpmath.pi
        c, s = mpmath.cos(5 * mpmath.pi / 8), mpmath.sin(5 * mpmath.pi / 8)
        numerator = [mpmath.mpf(0)] * (degree + 1)
        denominator = [mpmath.mpf(0)] * (degree + 1)
        for m in range(0, degree // 2 + 1):
            # cos(2 pi z) contributes to z^(2m); cos/sin(2 pi z^2) to z^(4m), z^(4m+2)
            denominator[2 * m] = (-1) ** m * two_pi ** (2 * m) / mpmath.factorial(2 * m)
            if 4 * m <= degree:
                term = two_pi ** (2 * m) / mpmath.factorial(2 * m)
                numerator[4 * m] += c * (-1) ** m * term
            if 4 * m + 2 <= degree:
                numerator[4 * m + 2] += (
                    s * (-1) ** m * two_pi ** (2 * m + 1) / mpmath.factorial(2 * m + 1)
                )
        quotient: list[mpmath.mpf] = []
        for n in range(degree + 1):
            acc = -numerator[n]
            for j in range(1, n + 1):
                acc -= denominator[j] * quotient[n - j]
            quotient.append(acc / denominator[0])
        return quotient


@functools.lru_cache(maxsize=1)
def correction_polynomials() -> tuple[np.ndarray, ...]:
    """C_0..C_4 as numpy polynomial coefficients in z, highest degree first.

    Built once; the returned arrays are marked read-only.
    """
    coefficients = psi_taylor()
    degree = len(coefficients) - 1
    polynomials = []
    with mpmath.workdps(SERIES_DIGITS):
        for terms in _CORRECTION_TERMS:
            combined = [mpmath.mpf(0)] * (degree + 1)
            for m, numerator, denominator, e in terms:
                scale = mpmath.mpf(numerator) / denominator / mpmath.pi ** (2 * e)
                for n in range(degree + 1 - m):
                    # d^m/dz^m z^(n+m) = (n+m)!/n! z^n
                    falling = mpmath.factorial(n + m) / mpmath.factorial(n)
                    combined[n] += scale * coefficients[n + m] * falling
            array = np.array([float(x) for x in reversed(combined)], dtype=np.float64)
            array.setflags(write=False)
            polynomials.append(array)
    logger.debug("Built Riemann-Siegel correction polynomials of degree %d", degree)
    return tuple(polynomials)


def riemann_siegel_theta(t: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """theta(t) from its asymptotic expansion; t >= 10.

    Example:
        >>> round(float(riemann_siegel_theta(100.0)), 3)
        87.971
    """
    t = check_height(t)
    inv = 1.0 / t
    inv2 = inv * inv
    tail = 31 / 80640 + inv2 * 127 / 430080
    series = inv * (1 / 48 + inv2 * (7 / 5760 + inv2 * tail))
    return t / 2 * np.log(t / (2 * math.pi)) - t / 2 - math.pi / 8 + series


class RiemannSiegelEvaluator(ZEvaluator):
    """Z(t) from the Riemann-Siegel main sum plus correction terms.

    Args:
        corrections: Number of correction coefficients C_0, ... to apply (0..5).
    """

    def __init__(self, corrections: int = MAX_CORRECTIONS) -> None:
        if not 0 <= corrections <= MAX_CORRECTIONS:
            raise ValueError(
                f"corrections must be in 0..{MAX_CORRECTIONS}, got {corrections}"
            )
        self._logger = logging.getLogger(self.__class__.__name__)
        self._corrections = corrections

    @property
    def name(self) -> str:
        return f"riemann-siegel[{self._corrections}]"

    @property
    def corrections(self) -> int:
        return self._corrections

    def theta(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return riemann_siegel_theta(t)

    def main_sum(
        self, t: npt.NDArray[np.float64], theta: npt.NDArray[np.float64]
    ) -> npt.NDArray[np.float64]:
        terms = np.floor(np.sqrt(t / (2 * math.pi))).astype(np.int64)
        top = int(terms.max()) if terms.size else 0
        if top == 0:
            return np.zeros_like(t)
        n = np.arange(1, top + 1, dtype=np.float64)
        rows = max(1, _CHUNK_CELLS // top)
        out = np.empty_like(t)
        for start in range(0, t.size, rows):
            stop = start + rows
            tt, th = t[start:stop, None], theta[start:stop, None]
            cells = np.cos(th - tt * np.log(n)) / np.sqrt(n)
            cells[n[None, :] > terms[start:stop, None]] = 0.0
            out[start:stop] = 2.0 * cells.sum(axis=1)
        return out

    def remainder(self, t: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        if self._corrections == 0:
            return np.zeros_like(t)
        root = np.sqrt(t / (2 * math.pi))
        terms = np.floor(root)
        z = root - terms - 0.5
        a = 1.0 / root
        total = np.zeros_like(t)
        power = np.ones_like(t)
        for polynomial in correction_polynomials()[: self._corrections]:
            total += np.polyval(polynomial, z) * power
            power = power * a
        sign = np.where(terms.astype(np.int64) % 2 == 1, 1.0, -1.0)
        return sign * np.sqrt(a) * total

    def z(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        values = check_height(t)
        flat = np.atleast_1d(values).astype(np.float64).ravel()
        result = self.main_sum(flat, self.theta(flat)) + self.remainder(flat)
        return result.reshape(np.shape(values))


def hardy_z(t: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Z(t) with the default Riemann-Siegel evaluator; t >= 10."""
    return _default_evaluator().z(t)


def hardy_z_prime(t: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Z'(t) by central differences; t >= 10 + delta."""
    return _default_evaluator().z_prime(t)


@functools.lru_cache(maxsize=1)
def _default_evaluator() -> RiemannSiegelEvaluator:
    return RiemannSiegelEvaluator()
