"""Rational intervals with outward (directed) rounding, used to certify inequalities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..errors import UndecidedError

__all__ = ["RatInterval", "sqrt_interval", "interval_of", "decide_sign", "MAX_PRECISION_BITS"]

MAX_PRECISION_BITS = 4096


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> RatInterval:
        q = Fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q) -> bool:
        return self.lo <= q <= self.hi

    def contains_interval(self, other: RatInterval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other):
        if not isinstance(other, RatInterval):
            other = RatInterval.point(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        if not isinstance(other, RatInterval):
            other = RatInterval.point(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatInterval):
            other = RatInterval.point(other)
        ends = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(ends), max(ends))

    __rmul__ = __mul__

    def reciprocal(self) -> RatInterval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("reciprocal of an interval containing 0")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if not isinstance(other, RatInterval):
            other = RatInterval.point(other)
        return self * other.reciprocal()

    def sign(self) -> int | None:
        """+1 / -1 when the whole interval is on one side of 0, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None


def sqrt_interval(D: int, precision_bits: int) -> RatInterval:
    """Dyadic enclosure ``[lo, hi]`` of ``sqrt(D)`` with ``hi - lo <= 2**-precision_bits``.

    Intervals for increasing precision are nested. A perfect square gives the
    degenerate interval at the exact root.
    """
    if D < 0:
        raise ValueError("D must be nonnegative")
    if precision_bits < 1:
        raise ValueError("precision_bits must be >= 1")
    r = isqrt(D)
    if r * r == D:
        return RatInterval.point(r)
    k = precision_bits
    m = isqrt(D << (2 * k))
    scale = 1 << k
    # hi >= 1 for D >= 2, so an absolute width 2^-k is also a relative one
    return RatInterval(Fraction(m, scale), Fraction(m + 1, scale))


def interval_of(x, precision_bits: int) -> RatInterval:
    """Enclosure of a QuadNum ``(a + b√D)/c``."""
    s = sqrt_interval(x.D, precision_bits)
    if x.b >= 0:
        lo, hi = x.a + x.b * s.lo, x.a + x.b * s.hi
    else:
        lo, hi = x.a + x.b * s.hi, x.a + x.b * s.lo
    return RatInterval(lo / x.c, hi / x.c)


def decide_sign(x, precision_bits: int = 64, cap: int = MAX_PRECISION_BITS) -> int:
    """Sign of a nonzero QuadNum by interval refinement alone.

    Precision doubles until the enclosure excludes 0; past ``cap`` bits an
    :class:`UndecidedError` is raised (which is what an exact zero produces).
    """
    bits = max(1, precision_bits)
    while True:
        s = interval_of(x, bits).sign()
        if s is not None:
            return s
        if bits >= cap:
            raise UndecidedError(f"sign of {x!r} undecided at {bits} bits")
        bits = min(cap, bits * 2)
