"""Quadrature on the unit interval for integrands with endpoint singularities.

The Opial constants are integrals over [0, 1] whose integrands blow up like
t^a at the left end (and, for q = 0, like (1-t)^b at the right end). The
singular factors are absorbed into the weight of QUADPACK's algebraic-weight
rule (QAWS), so the adaptive scheme only ever sees a bounded function.
"""

from __future__ import annotations

import logging
import math
import sys
import warnings
from collections.abc import Callable
from dataclasses import dataclass

from scipy import integrate

from core.config import config

logger = logging.getLogger(__name__)

_INNER_LEFT = sys.float_info.min
_INNER_RIGHT = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy request for a quadrature.

    Attributes:
        abs_tol: Absolute tolerance.
        rel_tol: Relative tolerance.
        max_refinements: Upper bound on adaptive subintervals.
    """

    abs_tol: float = config.quadrature.abs_tol
    rel_tol: float = config.quadrature.rel_tol
    max_refinements: int = config.quadrature.max_refinements

    def __post_init__(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("Tolerances must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be at least 1")

    def halved(self) -> QuadratureSpec:
        """Return the same request with both tolerances halved."""
        return QuadratureSpec(
            abs_tol=self.abs_tol / 2,
            rel_tol=self.rel_tol / 2,
            max_refinements=self.max_refinements,
        )


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral together with its estimated absolute error."""

    value: float
    error_estimate: float
    subintervals: int


class QuadratureError(RuntimeError):
    """Requested tolerance was not reached; carries the best estimate."""

    def __init__(self, message: str, estimate: float, error_estimate: float) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


def integrate_unit(
    integrand: Callable[[float], float],
    left_singularity_exponent: float,
    spec: QuadratureSpec | None = None,
    right_singularity_exponent: float = 0.0,
) -> QuadratureResult:
    """Integrate a function over (0, 1) with algebraic endpoint behaviour.

    The integrand is assumed to behave like t^a near 0 and like (1-t)^b near
    1, with a = left_singularity_exponent and b = right_singularity_exponent.
    Those factors are divided out and handed to QUADPACK as the weight
    t^a (1-t)^b, which the rule integrates exactly.

    Args:
        integrand: Function continuous on (0, 1).
        left_singularity_exponent: Exponent a of the behaviour at t = 0.
        spec: Accuracy request; defaults from the configuration.
        right_singularity_exponent: Exponent b of the behaviour at t = 1.

    Returns:
        QuadratureResult whose error estimate satisfies the request.

    Raises:
        ValueError: If either exponent is <= -1 (non-integrable).
        QuadratureError: If the tolerance was not reached.

    Example:
        >>> integrate_unit(lambda t: t**-0.5, -0.5).value  # doctest: +SKIP
        2.0
    """
    spec = spec or QuadratureSpec()
    a = left_singularity_exponent
    b = right_singularity_exponent
    if a <= -1 or b <= -1:
        raise ValueError(
            f"Non-integrable endpoint singularity (exponents {a}, {b}); "
            "both must exceed -1"
        )

    def smooth(t: float) -> float:
        # The weighted rule samples the endpoints themselves.
        t = min(max(t, _INNER_LEFT), _INNER_RIGHT)
        return integrand(t) * t ** (-a) * (1.0 - t) ** (-b)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if a == 0 and b == 0:
            result = integrate.quad(
                integrand,
                0.0,
                1.0,
                epsabs=spec.abs_tol,
                epsrel=spec.rel_tol,
                limit=spec.max_refinements,
                full_output=1,
            )
        else:
            result = integrate.quad(
                smooth,
                0.0,
                1.0,
                weight="alg",
                wvar=(a, b),
                epsabs=spec.abs_tol,
                epsrel=spec.rel_tol,
                limit=spec.max_refinements,
                full_output=1,
            )

    value, abserr, info = float(result[0]), float(result[1]), result[2]
    subintervals = int(info.get("last", 0))
    if len(result) > 3 or not math.isfinite(value):
        message = str(result[3]) if len(result) > 3 else "non-finite value"
        logger.warning(
            "Quadrature stopped short of tolerance: %s (estimate %.17g +/- %.3g)",
            message.splitlines()[0] if message else "",
            value,
            abserr,
        )
        raise QuadratureError(
            f"Tolerance not reached within {spec.max_refinements} subintervals",
            estimate=value,
            error_estimate=abserr,
        )
    return QuadratureResult(
        value=value, error_estimate=abserr, subintervals=subintervals
    )
