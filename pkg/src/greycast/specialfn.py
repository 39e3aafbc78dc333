"""Gamma-family and Mittag-Leffler special functions.

Only what the fractional operators and the Caputo-type grey model need:
``log_gamma`` and the one-parameter Mittag-Leffler function
``E_p(z) = sum_i z**i / Gamma(p*i + 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DataError

__all__ = ["MLParams", "log_gamma", "mittag_leffler"]

#: Terms whose magnitude exceeds this are taken as evidence that the series
#: needs asymptotic methods (out of scope here) and evaluation is refused.
_TERM_LIMIT = 1e15


@dataclass(frozen=True)
class MLParams:
    """Order and truncation policy for a Mittag-Leffler evaluation."""

    p: float
    truncation_tol: float = 1e-12
    max_terms: int = 200

    def __post_init__(self) -> None:
        if not 0.0 < self.p <= 1.0:
            raise DataError(f"Mittag-Leffler order must lie in (0, 1], got {self.p!r}")
        if self.truncation_tol <= 0.0:
            raise DataError("truncation tolerance must be positive")
        if self.max_terms < 1:
            raise DataError("max_terms must be at least 1")


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)) or x <= 0.0:
        raise DataError(f"log_gamma requires a positive argument, got {x!r}")
    return math.lgamma(x)


def mittag_leffler(
    p: float,
    z: float,
    *,
    truncation_tol: float = 1e-12,
    max_terms: int = 200,
) -> float:
    """One-parameter Mittag-Leffler function ``E_p(z)`` for ``p`` in (0, 1].

    Terms ``z**i / Gamma(p*i + 1)`` are evaluated in log space to avoid
    overflow.  For negative ``z`` consecutive terms are added in pairs, which
    limits cancellation in the alternating sum.  The series is truncated once
    a term falls below ``truncation_tol`` relative to the partial sum; failing
    to get there within ``max_terms`` raises :class:`ConvergenceError`.
    """
    params = MLParams(p, truncation_tol, max_terms)
    if not (isinstance(z, (int, float)) and math.isfinite(z)):
        raise DataError(f"argument must be a finite real, got {z!r}")
    z = float(z)
    if z == 0.0:
        return 1.0

    log_abs_z = math.log(abs(z))
    negative = z < 0.0

    def magnitude(i: int) -> float:
        m = math.exp(i * log_abs_z - math.lgamma(params.p * i + 1.0))
        if m > _TERM_LIMIT:
            raise ConvergenceError(
                f"Mittag-Leffler series term {i} exceeds {_TERM_LIMIT:g} "
                f"for p={params.p}, z={z}; argument outside the supported range"
            )
        return m

    # The truncation test uses the largest individual term magnitude of the
    # step, never the signed pair sum: for negative z a pair can cancel to
    # zero exactly (e.g. p=1, z=-4 at terms 3 and 4) long before convergence.
    total = 1.0  # i = 0 term
    i = 1
    while i <= params.max_terms:
        m1 = magnitude(i)
        step = -m1 if negative and i % 2 == 1 else m1
        tail = m1
        if negative and i + 1 <= params.max_terms:
            m2 = magnitude(i + 1)
            step += -m2 if (i + 1) % 2 == 1 else m2
            tail = max(m1, m2)
            i += 2
        else:
            i += 1
        total += step
        if tail < params.truncation_tol * max(abs(total), 1e-300):
            return total
    raise ConvergenceError(
        f"Mittag-Leffler series did not converge within {params.max_terms} terms "
        f"for p={params.p}, z={z}"
    )
