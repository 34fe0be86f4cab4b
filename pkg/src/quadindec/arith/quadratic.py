"""Exact arithmetic in Z[sqrt(D)] and Q(sqrt(D)).

Three value types live here:

* :class:`QuadInt` -- an integer ``x + y*sqrt(D)``.
* :class:`QuadNum` -- a field element ``(a + b*sqrt(D)) / c`` with integer
  ``a, b`` and positive integer ``c``; every comparison is decided exactly
  from integer signs.
* :class:`QuadSurd` -- a continued-fraction tail ``(P + sqrt(D)) / Q`` kept in
  PQa form, i.e. with ``Q | D - P^2``.

All three are immutable by convention (``__slots__``, no mutators).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from ..errors import InvariantError

__all__ = [
    "QuadInt",
    "QuadNum",
    "QuadSurd",
    "surd_sign",
    "norm",
    "is_totally_positive",
    "surd_step",
]


def surd_sign(a: int, b: int, D: int) -> int:
    """Sign of ``a + b*sqrt(D)`` for integers ``a, b`` and non-square ``D > 0``."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    lhs = a * a
    rhs = b * b * D
    if a > 0:
        # a > 0 > b
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


def _check_same_field(u, v):
    if u.D != v.D:
        raise ValueError(f"cannot combine elements of Q(sqrt {u.D}) and Q(sqrt {v.D})")


class QuadInt:
    """The element ``x + y*sqrt(D)`` of ``Z[sqrt(D)]``."""

    __slots__ = ("x", "y", "D")

    def __init__(self, x: int, y: int, D: int):
        self.x = x
        self.y = y
        self.D = D

    def __repr__(self):
        return f"QuadInt({self.x}, {self.y}, D={self.D})"

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        sign = "+" if self.y > 0 else "-"
        coef = "" if abs(self.y) == 1 else str(abs(self.y))
        return f"{self.x}{sign}{coef}√{self.D}"

    def __eq__(self, other):
        if isinstance(other, QuadInt):
            return self.x == other.x and self.y == other.y and self.D == other.D
        if isinstance(other, int):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        return hash((self.x, self.y, self.D))

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            _check_same_field(self, other)
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.x + o.x, self.y + o.y, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.x - o.x, self.y - o.y, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadInt(-self.x, -self.y, self.D)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.x * other, self.y * other, self.D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(
            self.x * o.x + self.D * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.D,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers leave Z[sqrt D]")
        result = QuadInt(1, 0, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> QuadInt:
        return QuadInt(self.x, -self.y, self.D)

    def norm(self) -> int:
        return self.x * self.x - self.D * self.y * self.y

    def trace(self) -> int:
        return 2 * self.x

    def sign(self) -> int:
        """Sign of the real number ``x + y*sqrt(D)`` (first embedding)."""
        return surd_sign(self.x, self.y, self.D)

    def is_totally_positive(self) -> bool:
        # x + y√D > 0 and x - y√D > 0  <=>  x > |y|√D
        return self.x > 0 and self.x * self.x > self.D * self.y * self.y

    def as_num(self) -> QuadNum:
        return QuadNum(self.x, self.y, 1, self.D)


def norm(a: QuadInt) -> int:
    """``x^2 - D*y^2``."""
    return a.norm()


def is_totally_positive(a: QuadInt) -> bool:
    return a.is_totally_positive()


class QuadNum:
    """The field element ``(a + b*sqrt(D)) / c``, stored in lowest terms with ``c > 0``."""

    __slots__ = ("a", "b", "c", "D")

    def __init__(self, a: int, b: int, c: int, D: int):
        if c == 0:
            raise ZeroDivisionError("QuadNum with zero denominator")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        if g != 1:
            a //= g
            b //= g
            c //= g
        self.a = a
        self.b = b
        self.c = c
        self.D = D

    @classmethod
    def from_rational(cls, q, D: int) -> QuadNum:
        q = Fraction(q)
        return cls(q.numerator, 0, q.denominator, D)

    @classmethod
    def sqrt(cls, D: int) -> QuadNum:
        return cls(0, 1, 1, D)

    def __repr__(self):
        return f"QuadNum(({self.a} + {self.b}√{self.D})/{self.c})"

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def surd_part(self) -> Fraction:
        return Fraction(self.b, self.c)

    def _coerce(self, other):
        if isinstance(other, QuadNum):
            _check_same_field(self, other)
            return other
        if isinstance(other, int):
            return QuadNum(other, 0, 1, self.D)
        if isinstance(other, Fraction):
            return QuadNum(other.numerator, 0, other.denominator, self.D)
        if isinstance(other, QuadInt):
            _check_same_field(self, other)
            return QuadNum(other.x, other.y, 1, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.c == o.c:
            return QuadNum(self.a + o.a, self.b + o.b, self.c, self.D)
        return QuadNum(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.c, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadNum(self.a * other, self.b * other, self.c, self.D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(
            self.a * o.a + self.b * o.b * self.D,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            self.D,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadNum:
        n = self.a * self.a - self.b * self.b * self.D
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt D)")
        return QuadNum(self.c * self.a, -self.c * self.b, n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadNum(1, 0, 1, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> QuadNum:
        return QuadNum(self.a, -self.b, self.c, self.D)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.D, self.c * self.c)

    def sign(self) -> int:
        return surd_sign(self.a, self.b, self.D)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c and self.D == o.D

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.D))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        # sign of self - o, cross-multiplied by the positive denominators
        return surd_sign(self.a * o.c - o.a * self.c, self.b * o.c - o.b * self.c, self.D)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            t = a
        elif b > 0:
            t = a + isqrt(b * b * self.D)
        else:
            # b√D is irrational, so floor(-z) = -floor(z) - 1
            t = a - isqrt(b * b * self.D) - 1
        return t // self.c

    def __float__(self):
        from .interval import interval_of

        iv = interval_of(self, 64)
        return float((iv.lo + iv.hi) / 2)


class QuadSurd:
    """A quadratic irrational ``(P + sqrt(D)) / Q`` with ``Q | D - P^2``."""

    __slots__ = ("P", "Q", "D")

    def __init__(self, P: int, Q: int, D: int):
        if Q == 0:
            raise InvariantError("QuadSurd with Q = 0")
        if (D - P * P) % Q:
            raise InvariantError(f"PQa normalization violated: {Q} does not divide {D} - {P}^2")
        self.P = P
        self.Q = Q
        self.D = D

    def __repr__(self):
        return f"QuadSurd(({self.P} + √{self.D})/{self.Q})"

    def __eq__(self, other):
        if not isinstance(other, QuadSurd):
            return NotImplemented
        return self.P == other.P and self.Q == other.Q and self.D == other.D

    def __hash__(self):
        return hash((self.P, self.Q, self.D))

    def value(self) -> QuadNum:
        return QuadNum(self.P, 1, self.Q, self.D)

    def floor(self, root: int | None = None) -> int:
        r = isqrt(self.D) if root is None else root
        if self.Q > 0:
            return (self.P + r) // self.Q
        # Q < 0: (P + √D)/Q lies strictly between (P + r + 1)/Q and (P + r)/Q
        return (self.P + r + 1) // self.Q

    def step(self, root: int | None = None) -> tuple[int, QuadSurd]:
        return surd_step(self, root)


def surd_step(c: QuadSurd, root: int | None = None) -> tuple[int, QuadSurd]:
    """One PQa step: ``c = u + 1/next`` with ``u = floor(c)``.

    ``root`` may pass a precomputed ``isqrt(D)``.
    """
    D = c.D
    r = isqrt(D) if root is None else root
    if r * r == D:
        raise InvariantError(f"D = {D} is a perfect square; c - floor(c) may vanish")
    u = c.floor(r)
    P1 = u * c.Q - c.P
    num = D - P1 * P1
    if num % c.Q:
        raise InvariantError("PQa divisibility lost")
    Q1 = num // c.Q
    if Q1 == 0:
        raise InvariantError("c - floor(c) = 0")
    return u, QuadSurd(P1, Q1, D)
