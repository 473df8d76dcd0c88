"""Closed rational intervals, enough for certified square roots and polynomials in them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Number = int | Fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> Interval:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def _coerce(self, other) -> Interval:
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval division by an interval containing 0")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def sqr(self) -> Interval:
        if self.lo >= 0:
            return Interval(self.lo ** 2, self.hi ** 2)
        if self.hi <= 0:
            return Interval(self.hi ** 2, self.lo ** 2)
        return Interval(0, max(self.lo ** 2, self.hi ** 2))

    def intersects(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def exact_sqrt(x: Number) -> Fraction | None:
    """sqrt(x) if x is the square of a rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt_interval(x: Number, width: Fraction = Fraction(1, 10**15)) -> Interval:
    """Rational enclosure of sqrt(x), of width at most ``width``; a point if exact."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of a negative number")
    r = exact_sqrt(x)
    if r is not None:
        return Interval.point(r)
    # sqrt(p/q) = sqrt(p q) / q; refine the integer square root at scale S
    p, q = x.numerator, x.denominator
    S = 1
    while Fraction(1, q * S) > width:
        S *= 2
    a = isqrt(p * q * S * S)
    return Interval(Fraction(a, q * S), Fraction(a + 1, q * S))
