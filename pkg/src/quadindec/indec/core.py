"""Semiconvergents alpha_{i,r} = alpha_i + r*alpha_{i+1} and their norms."""

from __future__ import annotations

from dataclasses import dataclass

from ..arith.quadratic import QuadInt
from ..cfrac import ContinuedFraction
from ..convergents import NormTable, convergent_list, norm_table

__all__ = [
    "Semiconvergent",
    "semiconvergent",
    "norm_semiconvergent",
    "norm_semiconvergent_expanded",
    "odd_windows",
    "enumerate_indecomposables",
    "max_indec_norm",
    "argmax_r",
]


@dataclass(frozen=True)
class Semiconvergent:
    i: int
    r: int
    value: QuadInt


def _check_index(cf: ContinuedFraction, i: int, r: int | None = None):
    if i < -1 or i % 2 == 0:
        raise ValueError(f"semiconvergents need odd i >= -1, got {i}")
    if r is not None:
        top = cf.u(i + 2)
        if not 0 <= r <= top:
            raise ValueError(f"r = {r} outside [0, u_(i+2) = {top}]")


def semiconvergent(cf: ContinuedFraction, i: int, r: int) -> Semiconvergent:
    _check_index(cf, i, r)
    ps, qs = convergent_list(cf, i + 1)
    p = ps[i + 1] + r * ps[i + 2]
    q = qs[i + 1] + r * qs[i + 2]
    return Semiconvergent(i, r, QuadInt(p, q, cf.D))


def norm_semiconvergent(cf: ContinuedFraction, i: int, r: int, table: NormTable | None = None) -> int:
    """``(D - (T_{i+1} - r N_{i+1})^2) / N_{i+1}``, with ``N(alpha_{i+1}) = -N_{i+1}``."""
    _check_index(cf, i, r)
    tab = table or norm_table(cf)
    n1 = tab.N(i + 1)
    m = tab.T(i + 1) - r * n1
    num = cf.D - m * m
    if num % n1:
        raise ArithmeticError(f"norm formula not integral at (i, r) = ({i}, {r})")
    return num // n1


def norm_semiconvergent_expanded(cf: ContinuedFraction, i: int, r: int, table: NormTable | None = None) -> int:
    """``N_i - r^2 N_{i+1} + 2 r T_{i+1}``."""
    _check_index(cf, i, r)
    tab = table or norm_table(cf)
    return tab.N(i) - r * r * tab.N(i + 1) + 2 * r * tab.T(i + 1)


def odd_windows(cf: ContinuedFraction) -> range:
    """Odd ``i`` with ``-1 <= i <= s - 2``: one full set of windows up to units."""
    return range(-1, cf.s - 1, 2)


def enumerate_indecomposables(cf: ContinuedFraction) -> list[Semiconvergent]:
    """``alpha_{i,r}`` for odd ``-1 <= i <= s-2`` and ``0 <= r < u_{i+2}``.

    Every indecomposable of Z[sqrt D] is one of these up to a unit and
    conjugation.
    """
    last = max(odd_windows(cf))
    ps, qs = convergent_list(cf, last + 1)
    out = []
    for i in odd_windows(cf):
        pa, qa = ps[i + 1], qs[i + 1]
        pb, qb = ps[i + 2], qs[i + 2]
        for r in range(cf.u(i + 2)):
            out.append(Semiconvergent(i, r, QuadInt(pa + r * pb, qa + r * qb, cf.D)))
    return out


def _best_r(D: int, t: int, n: int, hi: int) -> tuple[int, int]:
    """Maximize ``(D - (t - r n)^2) / n`` over integers ``0 <= r <= hi``; smallest r on ties."""
    # concave in r with peak at t/n; only the two neighbouring integers matter
    base = t // n
    best_r, best_v = -1, None
    for r in (base, base + 1):
        r = min(max(r, 0), hi)
        m = t - r * n
        v = (D - m * m) // n
        if best_v is None or v > best_v or (v == best_v and r < best_r):
            best_r, best_v = r, v
    return best_r, best_v


def argmax_r(cf: ContinuedFraction, i: int, table: NormTable | None = None) -> int:
    """The ``r`` in ``[0, u_{i+2}]`` maximizing ``N(alpha_{i,r})`` (smaller r on ties)."""
    _check_index(cf, i)
    tab = table or norm_table(cf)
    r, _ = _best_r(cf.D, tab.T(i + 1), tab.N(i + 1), cf.u(i + 2))
    return r


def max_indec_norm(cf: ContinuedFraction, table: NormTable | None = None) -> tuple[int, int, int]:
    """``(norm, i, r)`` of the indecomposable of largest norm, lexicographically first on ties."""
    tab = table or norm_table(cf)
    D = cf.D
    best = None
    for i in odd_windows(cf):
        r, v = _best_r(D, tab.T(i + 1), tab.N(i + 1), cf.u(i + 2) - 1)
        if best is None or v > best[0]:
            best = (v, i, r)
    return best
