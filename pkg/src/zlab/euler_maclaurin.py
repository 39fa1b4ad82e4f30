"""High-precision reference evaluator built on Euler-Maclaurin summation.

Slow and independent of the Riemann-Siegel code path; it serves as the
oracle for hardy_z and for spot checks from the command line.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import mpmath
import numpy as np

from zlab.protocol import ZEvaluator, check_height

if TYPE_CHECKING:
    import numpy.typing as npt


def zeta_euler_maclaurin(
    s: mpmath.mpc, terms: int, corrections: int = 30
) -> mpmath.mpc:
    """zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + Bernoulli tail.

    Args:
        s: Point with Re(s) > 0, s != 1.
        terms: Cut-off N of the direct sum; should exceed |Im s| / pi.
        corrections: Number of Bernoulli correction terms.
    """
    N = mpmath.mpf(terms)
    total = mpmath.fsum(mpmath.power(n, -s) for n in range(1, terms))
    total += mpmath.power(N, 1 - s) / (s - 1) + mpmath.power(N, -s) / 2
    rising = s
    power = mpmath.power(N, -s - 1)
    for j in range(1, corrections + 1):
        total += mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= N * N
    return total


class EulerMaclaurinEvaluator(ZEvaluator):
    """Z(t) and theta(t) in mpmath arithmetic, one point at a time.

    Args:
        digits: Working decimal precision.
        corrections: Bernoulli terms in the Euler-Maclaurin tail.
    """

    def __init__(self, digits: int = 30, corrections: int = 30) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)
        self._digits = digits
        self._corrections = corrections

    @property
    def name(self) -> str:
        return f"euler-maclaurin[{self._digits}]"

    def _terms(self, t: float) -> int:
        # |s| / (2 pi N) <= 1/2 keeps the Bernoulli tail shrinking geometrically.
        return int(t / math.pi) + 20

    def theta_mp(self, t: float) -> mpmath.mpf:
        """arg Gamma(1/4 + it/2) - (t/2) log pi, continuous branch."""
        with mpmath.workdps(self._digits):
            tt = mpmath.mpf(t)
            log_gamma = mpmath.loggamma(mpmath.mpc(0.25, tt / 2))
            return mpmath.im(log_gamma) - tt / 2 * mpmath.log(mpmath.pi)

    def rotated_zeta(self, t: float) -> mpmath.mpc:
        """exp(i theta) zeta(1/2 + it); its imaginary part vanishes."""
        with mpmath.workdps(self._digits):
            s = mpmath.mpc(0.5, t)
            zeta = zeta_euler_maclaurin(s, self._terms(t), self._corrections)
            return mpmath.expj(self.theta_mp(t)) * zeta

    def theta(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        values = check_height(t)
        out = np.array([float(self.theta_mp(x)) for x in values.ravel()])
        return out.reshape(values.shape)

    def z(self, t: npt.ArrayLike) -> npt.NDArray[np.float64]:
        values = check_height(t)
        out = np.array([float(mpmath.re(self.rotated_zeta(x))) for x in values.ravel()])
        self._logger.debug("Evaluated %d point(s)", out.size)
        return out.reshape(values.shape)
