"""Fixed-point midpoint-radius arithmetic.

A :class:`Ball` holds integers ``mid`` and ``rad`` at a binary scale ``prec``;
it encloses every real in ``[(mid - rad) / 2^prec, (mid + rad) / 2^prec]``.
Addition at a common scale is exact integer addition, so sums do not depend on
evaluation order.  Every rounding step adds its error to ``rad``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]

LOG2_10 = math.log2(10)


def bits_for_digits(digits: int) -> int:
    return math.ceil(digits * LOG2_10) + 8


def _floor_div(a: int, b: int) -> tuple[int, bool]:
    q, r = divmod(a, b)
    return q, r != 0


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class Precision:
    """Requested decimal digits plus a working-precision surplus."""

    digits: int
    guard: int = 10

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError(f"digits must be >= 1, got {self.digits}")
        if self.guard < 0:
            raise ValueError(f"guard must be >= 0, got {self.guard}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def bits(self) -> int:
        return bits_for_digits(self.working_digits)

    def target(self) -> Fraction:
        """Radius the caller asked for: ``10^-digits``."""
        return Fraction(1, 10**self.digits)

    def with_guard(self, guard: int) -> "Precision":
        return Precision(self.digits, guard)


@dataclass(frozen=True)
class Ball:
    mid: int
    rad: int
    prec: int

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("negative radius")

    # -- construction ---------------------------------------------------------

    @classmethod
    def exact(cls, value: int, prec: int) -> "Ball":
        return cls(value << prec, 0, prec)

    @classmethod
    def from_fraction(cls, q: Number, prec: int, rad: Number = 0) -> "Ball":
        """Enclose ``q +/- rad`` at scale ``prec``."""
        q = Fraction(q)
        mid, inexact = _floor_div(q.numerator << prec, q.denominator)
        r = Fraction(rad) * (1 << prec)
        return cls(mid, math.ceil(r) + int(inexact), prec)

    @classmethod
    def zero(cls, prec: int) -> "Ball":
        return cls(0, 0, prec)

    # -- views --------------------------------------------------------------------

    @property
    def mid_fraction(self) -> Fraction:
        return Fraction(self.mid, 1 << self.prec)

    @property
    def radius(self) -> Fraction:
        return Fraction(self.rad, 1 << self.prec)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.mid - self.rad, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.mid + self.rad, 1 << self.prec)

    def contains(self, value: Number) -> bool:
        value = Fraction(value)
        return self.lower <= value <= self.upper

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def overlaps(self, other: "Ball") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def inside(self, other: "Ball") -> bool:
        return other.lower <= self.lower and self.upper <= other.upper

    def abs_upper(self) -> Fraction:
        return Fraction(abs(self.mid) + self.rad, 1 << self.prec)

    def __float__(self):
        return self.mid / (1 << self.prec)

    def to_decimal(self, digits: int) -> str:
        """Midpoint rounded to ``digits`` places after the decimal point."""
        scaled = round(self.mid_fraction * 10**digits)
        sign = "-" if scaled < 0 else ""
        s = str(abs(scaled)).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"

    def to_sig(self, sig: int) -> str:
        """Midpoint with ``sig`` significant digits in scientific notation."""
        q = self.mid_fraction
        if q == 0:
            return "0"
        e = math.floor(math.log10(abs(float(q)))) if abs(float(q)) > 0 else 0
        # float log10 may be off by one at powers of ten; fix up exactly
        while abs(q) >= Fraction(10) ** (e + 1):
            e += 1
        while abs(q) < Fraction(10) ** e:
            e -= 1
        m = round(q / Fraction(10) ** e * 10 ** (sig - 1))
        if abs(m) >= 10**sig:
            m = round(Fraction(m, 10))
            e += 1
        sign = "-" if m < 0 else ""
        digits = str(abs(m))
        return f"{sign}{digits[0]}.{digits[1:]}e{e:+d}"

    def __repr__(self):
        return f"Ball({float(self):.17g} +/- {float(self.radius):.3g})"

    # -- arithmetic -------------------------------------------------------------------

    def rescale(self, prec: int) -> "Ball":
        if prec == self.prec:
            return self
        if prec > self.prec:
            k = prec - self.prec
            return Ball(self.mid << k, self.rad << k, prec)
        k = self.prec - prec
        mid, inexact = _floor_div(self.mid, 1 << k)
        return Ball(mid, _ceil_div(self.rad, 1 << k) + int(inexact), prec)

    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction)):
            return Ball.from_fraction(other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.prec, other.prec)
        a, b = self.rescale(p), other.rescale(p)
        return Ball(a.mid + b.mid, a.rad + b.rad, p)

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.prec)

    def __abs__(self):
        return -self if self.mid < 0 else self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Ball(self.mid * other, self.rad * abs(other), self.prec)
        if isinstance(other, Fraction):
            return self.mul_int(other.numerator).div_int(other.denominator)
        if not isinstance(other, Ball):
            return NotImplemented
        p = max(self.prec, other.prec)
        mid = self.mid * other.mid
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        return Ball(mid, rad, self.prec + other.prec).rescale(p)

    __rmul__ = __mul__

    def mul_int(self, n: int) -> "Ball":
        return Ball(self.mid * n, self.rad * abs(n), self.prec)

    def div_int(self, n: int) -> "Ball":
        if n == 0:
            raise ZeroDivisionError("ball division by zero")
        if n < 0:
            return (-self).div_int(-n)
        mid, inexact = _floor_div(self.mid, n)
        return Ball(mid, _ceil_div(self.rad, n) + int(inexact), self.prec)

    def reciprocal(self) -> "Ball":
        if self.contains_zero():
            raise ZeroDivisionError("reciprocal of a ball containing zero")
        p = self.prec
        m, r = abs(self.mid), self.rad
        # |1/(m - r) - 1/m| = r / (m (m - r)), everything at scale 2^p
        num = 1 << (3 * p)
        mid, inexact = _floor_div(num, m * (1 << p))
        rad = _ceil_div(r * (1 << (2 * p)), m * (m - r)) + int(inexact)
        out = Ball(mid, rad, p)
        return -out if self.mid < 0 else out

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.div_int(other)
        if isinstance(other, Fraction):
            return self.mul_int(other.denominator).div_int(other.numerator)
        if isinstance(other, Ball):
            return self * other.reciprocal()
        return NotImplemented

    def widen(self, extra: Number) -> "Ball":
        """Add a nonnegative error ``extra`` (a real number) to the radius."""
        extra = Fraction(extra)
        if extra < 0:
            raise ValueError("negative widening")
        return Ball(self.mid, self.rad + math.ceil(extra * (1 << self.prec)), self.prec)
