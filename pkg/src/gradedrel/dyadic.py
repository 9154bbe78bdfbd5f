"""Exact nonnegative dyadic rationals: numerator * 2**-exponent.

Canonical form keeps the numerator odd (or zero, with exponent zero), so
structural equality is value equality.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructuralInputError


@dataclass(frozen=True)
class DyadicValue:
    numerator: int
    exponent: int

    def __post_init__(self):
        if self.numerator < 0:
            raise StructuralInputError(f"negative dyadic numerator {self.numerator}")
        if self.numerator == 0:
            object.__setattr__(self, "exponent", 0)
            return
        num, exp = self.numerator, self.exponent
        while num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def zero(cls) -> "DyadicValue":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "DyadicValue":
        return cls(1, 0)

    @classmethod
    def pow2(cls, k: int) -> "DyadicValue":
        """The value 2**k."""
        return cls(1, -k)

    @property
    def is_zero(self) -> bool:
        return self.numerator == 0

    def _aligned(self, other: "DyadicValue") -> tuple[int, int, int]:
        exp = max(self.exponent, other.exponent)
        return (
            self.numerator << (exp - self.exponent),
            other.numerator << (exp - other.exponent),
            exp,
        )

    def __add__(self, other: "DyadicValue") -> "DyadicValue":
        a, b, exp = self._aligned(other)
        return DyadicValue(a + b, exp)

    def times_pow2(self, k: int) -> "DyadicValue":
        if self.is_zero:
            return self
        return DyadicValue(self.numerator, self.exponent - k)

    def __lt__(self, other: "DyadicValue") -> bool:
        a, b, _ = self._aligned(other)
        return a < b

    def __le__(self, other: "DyadicValue") -> bool:
        a, b, _ = self._aligned(other)
        return a <= b

    def __gt__(self, other: "DyadicValue") -> bool:
        return other < self

    def __ge__(self, other: "DyadicValue") -> bool:
        return other <= self

    def as_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.numerator, 1 << self.exponent)
        return Fraction(self.numerator << -self.exponent, 1)

    def __str__(self) -> str:
        if self.exponent <= 0:
            return str(self.numerator << -self.exponent)
        return f"{self.numerator}/{1 << self.exponent}"


def floor_log2(value: Fraction) -> int:
    """Largest e with 2**e <= value, for positive rationals, exactly."""
    if value <= 0:
        raise StructuralInputError(f"floor_log2 needs a positive value, got {value}")
    p, q = value.numerator, value.denominator
    e = p.bit_length() - q.bit_length()
    # 2**e <= p/q  iff  q * 2**e <= p
    if e >= 0:
        ok = (q << e) <= p
    else:
        ok = q <= (p << -e)
    return e if ok else e - 1


def centered_cover_level(width: Fraction) -> int:
    """The unique m with 2**-m < width <= 2**-(m-1).

    A ball of radius 2**-m centered at the midpoint of an interval of this
    width covers it (width/2 <= 2**-m) while staying strictly smaller than
    the width itself.
    """
    if width <= 0:
        raise StructuralInputError(f"width must be positive, got {width}")
    k = floor_log2(width)
    exact = Fraction(2) ** k == width
    return 1 - k if exact else -k
