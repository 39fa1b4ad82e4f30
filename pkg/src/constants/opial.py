"""Boyd's best Opial constants and their special cases.

For y in C^1[a, b] with y(a) = 0,

    ∫ |y|^p |y'|^q  <=  K(p, q, r) (b - a)^(r - q) (∫ |y'|^r)^((p + q) / r),

and Boyd determined the best K(p, q, r) through a one-dimensional integral
I(p, q, r). This module evaluates that constant, the r = p + q special case
written through L(p, q), and the two mixed-moment constants K(h, k) used by
the conditional gap bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from core.quadrature import QuadratureSpec, integrate_unit


@dataclass(frozen=True)
class OpialTriple:
    """Exponents of the Opial inequality.

    Attributes:
        p: Exponent of |y|, positive.
        q: Exponent of |y'|, 0 <= q < r.
        r: Integrability exponent, r > 1.
    """

    p: float
    q: float
    r: float

    def __post_init__(self) -> None:
        if self.p <= 0:
            raise ValueError(f"p must be positive, got {self.p}")
        if self.r <= 1:
            raise ValueError(f"r must exceed 1, got {self.r}")
        if not 0 <= self.q < self.r:
            raise ValueError(f"q must satisfy 0 <= q < r, got q={self.q}, r={self.r}")


@dataclass(frozen=True)
class BoydBreakdown:
    """Intermediate quantities of Boyd's constant.

    Attributes:
        I_value: The integral I(p, q, r).
        beta_value: The factor beta.
        K_value: The best constant K(p, q, r).
        error_estimate: Propagated absolute error of K_value.
    """

    I_value: float
    beta_value: float
    K_value: float
    error_estimate: float


@dataclass(frozen=True)
class LValue:
    """The integral L(p, q) = ∫_0^1 ds / (1 - lambda s^p)."""

    p: float
    q: float
    lam: float
    value: float
    error_estimate: float


def boyd_K(triple: OpialTriple, spec: QuadratureSpec | None = None) -> BoydBreakdown:
    """Evaluate Boyd's constant K(p, q, r).

    The integrand of I(p, q, r) carries t^(1/p - 1) at t = 0 and, when
    q = 0, (1 - t)^(-1/r) at t = 1; both are absorbed by the quadrature
    weight.

    Args:
        triple: Exponents (p, q, r).
        spec: Quadrature accuracy request.

    Returns:
        BoydBreakdown with I, beta and K.

    Example:
        >>> boyd_K(OpialTriple(2, 2, 4)).K_value  # doctest: +SKIP
        0.34613...
    """
    p, q, r = triple.p, triple.q, triple.r
    slope = r * (q - 1) / (r - q)
    power = -(p + q + r * p) / (r * p)

    def integrand(t: float) -> float:
        return (1.0 + slope * t) ** power * (1.0 + (q - 1) * t) * t ** (1.0 / p - 1.0)

    right = -1.0 / r if q == 0 else 0.0
    integral = integrate_unit(integrand, 1.0 / p - 1.0, spec, right)

    beta = ((p * (r - 1) + (r - q)) / ((r - 1) * (p + q))) ** (1.0 / r)
    prefactor = (r - q) * p**p / ((r - 1) * (p + q))
    K = prefactor * beta ** (p + q - r) * integral.value ** (-p)
    error = K * p * integral.error_estimate / integral.value
    return BoydBreakdown(
        I_value=integral.value,
        beta_value=beta,
        K_value=K,
        error_estimate=error,
    )


def conjugate_lambda(p: float, q: float) -> float:
    """lambda = (p + q)(q - 1) / ((p + q - 1) q)."""
    if p + q == 1:
        raise ValueError("lambda is undefined for p + q = 1")
    return (p + q) * (q - 1) / ((p + q - 1) * q)


def L_pq(p: float, q: float, spec: QuadratureSpec | None = None) -> LValue:
    """Evaluate L(p, q) = ∫_0^1 ds / (1 - lambda s^p).

    Args:
        p: Positive exponent.
        q: Positive exponent.
        spec: Quadrature accuracy request.

    Returns:
        LValue; value == 1 exactly when lambda == 0.

    Raises:
        ValueError: If p or q is not positive, or lambda >= 1 (the pole
            at s = lambda^(-1/p) lies inside [0, 1]).
    """
    if p <= 0 or q <= 0:
        raise ValueError(f"p and q must be positive, got p={p}, q={q}")
    lam = conjugate_lambda(p, q)
    if lam >= 1:
        raise ValueError(f"lambda={lam} >= 1 puts a pole inside [0, 1]")
    if lam == 0:
        return LValue(p=p, q=q, lam=0.0, value=1.0, error_estimate=0.0)

    result = integrate_unit(lambda s: 1.0 / (1.0 - lam * s**p), 0.0, spec)
    return LValue(
        p=p, q=q, lam=lam, value=result.value, error_estimate=result.error_estimate
    )


def K_conjugate(p: float, q: float, spec: QuadratureSpec | None = None) -> float:
    """K(p, q, p + q) = q (p + q)^(p - 1) / (p L(p, q) + q)^p.

    The q = 0 limit is not covered here; use boyd_K(p, 0, p) instead.
    """
    if q == 0:
        raise ValueError("q = 0 is excluded; evaluate boyd_K(OpialTriple(p, 0, p))")
    L = L_pq(p, q, spec).value
    return q * (p + q) ** (p - 1) / (p * L + q) ** p


def _check_mixed(h: int, k: int) -> None:
    if not 1 <= h < k:
        raise ValueError(f"Mixed constants need 1 <= h < k, got h={h}, k={k}")


def mixed_L(h: int, k: int, spec: QuadratureSpec | None = None) -> float:
    """L with lambda = k(2h - 1) / (h(2k - 1)) and exponent 2k - 2h."""
    _check_mixed(h, k)
    return L_pq(2 * k - 2 * h, 2 * h, spec).value


def K_mixed_published(h: int, k: int, spec: QuadratureSpec | None = None) -> float:
    """K(h, k) = h k^(2k - 1) / ((k - h) L + h)^(2k), the form used in the tables."""
    L = mixed_L(h, k, spec)
    return h * float(k) ** (2 * k - 1) / ((k - h) * L + h) ** (2 * k)


def K_mixed_derived(h: int, k: int, spec: QuadratureSpec | None = None) -> float:
    """K(2k - 2h, 2h, 2k), i.e. the r = p + q constant with p = 2k - 2h, q = 2h.

    Simplifies to h k^(2k - 2h - 1) / ((k - h) L + h)^(2k - 2h); it differs
    from K_mixed_published by the factor k^(2h) / ((k - h) L + h)^(2h).
    """
    _check_mixed(h, k)
    return K_conjugate(2 * k - 2 * h, 2 * h, spec)


def halved_constant(p: float, q: float, spec: QuadratureSpec | None = None) -> float:
    """Constant for y vanishing at both ends of [0, pi].

    Splitting at the midpoint gives
    ∫_0^pi |y|^p |y'|^q <= K(p, q, p + q) (pi/2)^p ∫_0^pi |y'|^(p + q).
    """
    return K_conjugate(p, q, spec) * (math.pi / 2) ** p


def wirtinger_factor(p: float, q: float, spec: QuadratureSpec | None = None) -> float:
    """Reciprocal of halved_constant; 4 / (K(2,2,4) pi^2) for (2, 2)."""
    return 1.0 / halved_constant(p, q, spec)
