"""Convergents p_i/q_i of sqrt(D), the elements alpha_i = p_i + q_i*sqrt(D) and their norms."""

from __future__ import annotations

from dataclasses import dataclass

from .arith.quadratic import QuadInt
from .cfrac import ContinuedFraction

__all__ = [
    "Convergent",
    "NormRecord",
    "NormTable",
    "convergent",
    "convergent_list",
    "alpha",
    "norm_Ni",
    "T",
    "norm_table",
    "min_negative_norm",
    "negative_norm_minimizers",
    "fundamental_totally_positive_unit",
]


@dataclass(frozen=True)
class Convergent:
    i: int
    p: int
    q: int


def convergent_list(cf: ContinuedFraction, upto: int) -> tuple[list[int], list[int]]:
    """``(ps, qs)`` with ``ps[i + 1] = p_i`` for ``-1 <= i <= upto``."""
    ps = [1, cf.u0]
    qs = [0, 1]
    period, s = cf.period, cf.s
    for i in range(1, upto + 1):
        u = period[(i - 1) % s]
        ps.append(u * ps[-1] + ps[-2])
        qs.append(u * qs[-1] + qs[-2])
    del ps[upto + 2 :], qs[upto + 2 :]
    return ps, qs


def convergent(cf: ContinuedFraction, i: int) -> Convergent:
    if i < -1:
        raise IndexError("convergents start at index -1")
    ps, qs = convergent_list(cf, max(i, 0))
    return Convergent(i, ps[i + 1], qs[i + 1])


def alpha(cf: ContinuedFraction, i: int) -> QuadInt:
    """``alpha_i = p_i + q_i*sqrt(D)``; totally positive exactly for odd ``i``."""
    c = convergent(cf, i)
    return QuadInt(c.p, c.q, cf.D)


def norm_Ni(cf: ContinuedFraction, i: int) -> int:
    """``N_i = |p_i^2 - D q_i^2|`` straight from the convergent."""
    c = convergent(cf, i)
    return abs(c.p * c.p - cf.D * c.q * c.q)


def T(cf: ContinuedFraction, i: int) -> int:
    """``T_i = p_i p_{i-1} - D q_i q_{i-1}`` for ``i >= 0``."""
    if i < 0:
        raise IndexError("T_i is defined for i >= 0")
    ps, qs = convergent_list(cf, i)
    return ps[i + 1] * ps[i] - cf.D * qs[i + 1] * qs[i]


@dataclass(frozen=True)
class NormRecord:
    i: int
    N: int
    T: int


@dataclass(frozen=True)
class NormTable:
    """``N_i`` and ``T_i`` over one period, read off the PQa tails.

    With ``c_{i+1} = (P + sqrt(D))/Q`` one has ``N_i = Q`` and
    ``T_i = (-1)^i * P``; no convergent (and no big integer) is formed.
    """

    cf: ContinuedFraction
    records: tuple[NormRecord, ...]

    def N(self, i: int) -> int:
        if i == -1:
            return 1
        return self.cf.Q(i + 1)

    def T(self, i: int) -> int:
        if i < 0:
            raise IndexError("T_i is defined for i >= 0")
        P = self.cf.P(i + 1)
        return -P if i % 2 else P

    def signed_norm(self, i: int) -> int:
        """``N(alpha_i) = (-1)^(i+1) N_i``."""
        n = self.N(i)
        return n if i % 2 else -n


def norm_table(cf: ContinuedFraction) -> NormTable:
    recs = tuple(
        NormRecord(i, cf.Q(i + 1), -cf.P(i + 1) if i % 2 else cf.P(i + 1)) for i in range(cf.s)
    )
    return NormTable(cf, recs)


def negative_norm_minimizers(cf: ContinuedFraction) -> tuple[int, list[int]]:
    """``N`` and every even ``i`` in ``[0, s)`` with ``N_i = N``."""
    best = None
    where: list[int] = []
    for i in range(0, cf.s, 2):
        n = cf.Q(i + 1)
        if best is None or n < best:
            best, where = n, [i]
        elif n == best:
            where.append(i)
    # s = 1: the only index is 0, handled by the loop
    return best, where


def min_negative_norm(cf: ContinuedFraction) -> tuple[int, int]:
    """``(N, i0 + 1)``: the minimal |negative norm| and the first even index attaining it."""
    n, where = negative_norm_minimizers(cf)
    return n, where[0]


def fundamental_totally_positive_unit(cf: ContinuedFraction) -> QuadInt:
    """``alpha_{s-1}`` when ``s`` is even, else its square."""
    eta = alpha(cf, cf.s - 1)
    return eta if cf.s % 2 == 0 else eta * eta
