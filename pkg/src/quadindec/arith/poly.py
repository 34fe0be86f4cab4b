"""Dense univariate polynomials with integer coefficients."""

from __future__ import annotations

from itertools import zip_longest

__all__ = ["IntPoly"]


class IntPoly:
    """Polynomial in one variable, coefficients stored constant term first.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def linear(cls, c0: int, c1: int) -> IntPoly:
        return cls((c0, c1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @staticmethod
    def _lift(other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return IntPoly(a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> IntPoly:
        """Divide every coefficient by the integer ``k``; raises if not exact."""
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return IntPoly(c // k for c in self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_linear(self, a: int, b: int) -> IntPoly:
        """``self(a + b*x)``."""
        out = IntPoly()
        lin = IntPoly((a, b))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def dominated_by(self, other: IntPoly, x_min: int = 0) -> bool:
        """True iff ``self(x) <= other(x)`` for every real ``x >= x_min``.

        Only defined for polynomials of degree at most 1: two lines cross at
        most once, so the value at ``x_min`` and the slopes decide it.
        """
        if self.degree > 1 or other.degree > 1:
            raise ValueError("dominance test needs linear polynomials")
        return self(x_min) <= other(x_min) and self.coeff(1) <= other.coeff(1)
