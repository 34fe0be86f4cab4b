"""Periodic continued fraction of sqrt(D) with exact tails."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .arith.quadratic import QuadSurd
from .errors import InvariantError, OutOfScopeError, PeriodBudgetError

__all__ = ["ContinuedFraction", "expand_sqrt", "partial_quotient", "tail_surd", "in_scope_reason"]


@dataclass(frozen=True)
class ContinuedFraction:
    """``sqrt(D) = [u0; period]`` where ``period = (u_1, ..., u_{s-1}, 2*u0)``.

    ``tails[k]`` holds the PQa pair ``(P, Q)`` of ``c_{k+1}``; together with
    periodicity this gives every tail ``c_i`` for ``i >= 1``.
    """

    D: int
    u0: int
    period: tuple[int, ...]
    tails: tuple[tuple[int, int], ...] = field(repr=False, compare=False)

    @property
    def s(self) -> int:
        return len(self.period)

    @property
    def word(self) -> tuple[int, ...]:
        """The symmetric interior ``(u_1, ..., u_{s-1})``."""
        return self.period[:-1]

    def u(self, i: int) -> int:
        return partial_quotient(self, i)

    def tail(self, i: int) -> QuadSurd:
        return tail_surd(self, i)

    def P(self, i: int) -> int:
        """PQa numerator offset of ``c_i``."""
        if i == 0:
            return 0
        return self.tails[(i - 1) % len(self.period)][0]

    def Q(self, i: int) -> int:
        """PQa denominator of ``c_i``."""
        if i == 0:
            return 1
        return self.tails[(i - 1) % len(self.period)][1]

    def __str__(self):
        return f"√{self.D} = [{self.u0}; {', '.join(map(str, self.period))}]"


def in_scope_reason(D: int, squarefree: bool | None = None) -> str | None:
    """Why ``D`` is outside the fields handled here, or None if it is in scope.

    Scope is squarefree ``D >= 2`` with ``D = 2, 3 (mod 4)``. ``squarefree``
    may be passed when already known, skipping the factorization.
    """
    if D < 2:
        return f"D = {D} must be at least 2"
    r = isqrt(D)
    if r * r == D:
        return f"D = {D} is a perfect square"
    if D % 4 not in (2, 3):
        return f"D = {D} is {D % 4} mod 4, need 2 or 3"
    if squarefree is None:
        from .arith.ntheory import is_squarefree

        squarefree = is_squarefree(D)
    if not squarefree:
        return f"D = {D} is not squarefree"
    return None


def expand_sqrt(D: int, max_period: int | None = None) -> ContinuedFraction:
    """Expand ``sqrt(D)`` by the PQa recurrence until a tail pair ``(P, Q)`` repeats.

    Works for any non-square ``D >= 2``; squarefreeness is not required here.
    Periods can be as long as about ``sqrt(D)``, so ``max_period`` bounds the
    work for large ``D``.
    """
    if D < 2:
        raise OutOfScopeError(f"D = {D} must be at least 2")
    r = isqrt(D)
    if r * r == D:
        raise OutOfScopeError(f"D = {D} is a perfect square")
    # c_1 = 1/(sqrt(D) - r) = (r + sqrt(D)) / (D - r^2)
    P, Q = r, D - r * r
    first = (P, Q)
    tails = [first]
    period = []
    seen = {first}
    while True:
        u = (P + r) // Q
        period.append(u)
        P = u * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == first:
            break
        if max_period is not None and len(period) >= max_period:
            raise PeriodBudgetError(f"period of sqrt({D}) exceeds {max_period} terms")
        if (P, Q) in seen:
            raise InvariantError(f"tail recurrence for D = {D} re-entered a non-initial state")
        seen.add((P, Q))
        tails.append((P, Q))
    cf = ContinuedFraction(D, r, tuple(period), tuple(tails))
    if period[-1] != 2 * r:
        raise InvariantError(f"last partial quotient {period[-1]} != 2*u0 for D = {D}")
    body = period[:-1]
    if body != body[::-1]:
        raise InvariantError(f"period interior of sqrt({D}) is not symmetric")
    return cf


def partial_quotient(cf: ContinuedFraction, i: int) -> int:
    """``u_i`` with ``u_0`` the integer part and ``u_{ks} = 2*u0`` for ``k >= 1``."""
    if i < 0:
        raise IndexError("partial quotients start at index 0")
    if i == 0:
        return cf.u0
    return cf.period[(i - 1) % cf.s]


def tail_surd(cf: ContinuedFraction, i: int) -> QuadSurd:
    """The exact tail ``c_i = [u_i; u_{i+1}, ...]``; ``c_0 = sqrt(D)``."""
    if i < 0:
        raise IndexError("tails start at index 0")
    if i == 0:
        return QuadSurd(0, 1, cf.D)
    P, Q = cf.tails[(i - 1) % cf.s]
    return QuadSurd(P, Q, cf.D)
