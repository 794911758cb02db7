"""High-precision reals with an explicit error bound.

All regulator-flavoured quantities are mpmath floats computed with guard
bits and reported together with a conservative error bound, so downstream
equality checks can be tolerance-aware.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import DomainError

#: extra working bits beyond the requested precision
GUARD_BITS = 16

MIN_PRECISION_BITS = 64


@dataclass(frozen=True)
class HighPrecReal:
    value: mpf
    error_bound: mpf
    precision_bits: int

    def __float__(self) -> float:
        return float(self.value)

    def to_decimal(self) -> str:
        dps = int(self.precision_bits * 0.30103) + 2
        return mpmath.nstr(self.value, dps, strip_zeros=False)

    def agrees_with(self, other: "HighPrecReal", rel_tol_bits: int) -> bool:
        """True when the two values match to at least rel_tol_bits significant bits."""
        with mpmath.workprec(max(self.precision_bits, other.precision_bits) + GUARD_BITS):
            scale = max(abs(self.value), abs(other.value))
            if scale == 0:
                return True
            return abs(self.value - other.value) <= scale * mpf(2) ** (-rel_tol_bits)

    def scaled(self, num: int, den: int) -> "HighPrecReal":
        """Exact rational rescale num/den; the error bound scales along."""
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            value = self.value * num / den
            err = self.error_bound * abs(mpf(num)) / abs(den)
        return HighPrecReal(value, err, self.precision_bits)


def check_precision_bits(precision_bits: int) -> None:
    if precision_bits < MIN_PRECISION_BITS:
        raise DomainError(
            f"precision_bits {precision_bits} < minimum {MIN_PRECISION_BITS}",
            precondition="precision_bits >= 64",
        )


def workprec(precision_bits: int):
    """mpmath context manager at the requested precision plus guard bits."""
    return mpmath.workprec(precision_bits + GUARD_BITS)


def hp_from_value(value: mpf, precision_bits: int) -> HighPrecReal:
    """Wrap a freshly computed mpf; the bound covers the final few ulps."""
    err = abs(value) * mpf(2) ** (2 - precision_bits) + mpf(2) ** (-precision_bits)
    return HighPrecReal(value, err, precision_bits)
