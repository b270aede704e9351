"""Exact dyadic rationals m * 2**e with arbitrary-precision mantissa."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from numbers import Rational


@total_ordering
class DyadicRational:
    """Value ``mantissa * 2**exponent`` kept in canonical form (odd mantissa, or zero)."""

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        mantissa, exponent = int(mantissa), int(exponent)
        if mantissa == 0:
            exponent = 0
        else:
            tz = (mantissa & -mantissa).bit_length() - 1
            mantissa >>= tz
            exponent += tz
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicRational is immutable")

    @classmethod
    def pow2(cls, e: int) -> DyadicRational:
        return cls(1, e)

    @classmethod
    def coerce(cls, value) -> DyadicRational:
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Rational):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not dyadic")
            return cls(value.numerator, -(den.bit_length() - 1))
        raise TypeError(f"cannot convert {type(value).__name__} to DyadicRational")

    def as_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def _align(self, other: DyadicRational) -> tuple[int, int, int]:
        e = min(self.exponent, other.exponent)
        return self.mantissa << (self.exponent - e), other.mantissa << (other.exponent - e), e

    def __add__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        x, y, e = self._align(other)
        return DyadicRational(x + y, e)

    __radd__ = __add__

    def __neg__(self) -> DyadicRational:
        return DyadicRational(-self.mantissa, self.exponent)

    def __sub__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return DyadicRational(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, DyadicRational):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        if isinstance(other, (int, Rational)):
            return self.as_fraction() == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, float):
            return float(self) < other
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return self.as_fraction() < other
        x, y, _ = self._align(other)
        return x < y

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __bool__(self) -> bool:
        return self.mantissa != 0

    def __str__(self) -> str:
        """Fraction string ``m/2^e`` (exponent of the denominator)."""
        if self.exponent >= 0:
            return f"{self.mantissa << self.exponent}/2^0"
        return f"{self.mantissa}/2^{-self.exponent}"

    def __repr__(self) -> str:
        return f"DyadicRational({self.mantissa}, {self.exponent})"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)
