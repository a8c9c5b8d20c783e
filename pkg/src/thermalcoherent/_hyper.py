"""Hyperbolic quotients that are singular or cancellation-prone at zero.

All maps between the three state conventions involve the quotients
sinh(t)/t, (cosh(t) - 1)/t and (sinh(t) - t)/t**2.  Direct evaluation
loses digits for small |t|, so each helper switches to a sixth-order
Taylor expansion below ``SERIES_CUTOFF``.
"""

import math

SERIES_CUTOFF = 1e-4


def sinhc(t: float) -> float:
    """sinh(t)/t, continuous at t = 0."""
    if abs(t) < SERIES_CUTOFF:
        t2 = t * t
        return 1.0 + t2 / 6.0 + t2 * t2 / 120.0 + t2 * t2 * t2 / 5040.0
    return math.sinh(t) / t


def coshm1_over(t: float) -> float:
    """(cosh(t) - 1)/t, continuous at t = 0.

    Written through expm1 so the subtraction never cancels:
    cosh(t) - 1 == (expm1(t) + expm1(-t)) / 2.
    """
    if abs(t) < SERIES_CUTOFF:
        t2 = t * t
        return t * (0.5 + t2 / 24.0 + t2 * t2 / 720.0)
    return 0.5 * (math.expm1(t) + math.expm1(-t)) / t


def expm1_over(t: float) -> float:
    """(exp(t) - 1)/t, continuous at t = 0."""
    if abs(t) < SERIES_CUTOFF:
        return 1.0 + t / 2.0 + t * t / 6.0 + t * t * t / 24.0
    return math.expm1(t) / t


def sinhm_over_sq(t: float) -> float:
    """(sinh(t) - t)/t**2, continuous at t = 0.

    Equal to (exp(t) - 2*t - exp(-t)) / (2*t**2); this is the
    coefficient of the accumulated commutator phase in the sliced
    product of squeeze and displacement factors.
    """
    if abs(t) < SERIES_CUTOFF:
        t2 = t * t
        return t * (1.0 / 6.0 + t2 / 120.0 + t2 * t2 / 5040.0)
    return (math.sinh(t) - t) / (t * t)
