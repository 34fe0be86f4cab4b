"""Parametric families of D sharing a prescribed symmetric period word.

For a palindromic word ``w = (u_1, ..., u_{s-1})`` let the continuant
product of ``[[u, 1], [1, 0]]`` over ``w`` be ``[[A, B], [B, C]]``. Then
``sqrt(D) = [u0; w, 2*u0]`` forces ``D = u0^2 + (2*B*u0 + C)/A``, and the
congruence ``A | 2*B*u0 + C`` cuts out an arithmetic progression of ``u0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd, isqrt
from multiprocessing import get_context
from typing import Iterable

from .arith.ntheory import DEFAULT_FACTOR_BUDGET, is_prime, is_squarefree
from .arith.poly import IntPoly
from .cfrac import expand_sqrt, in_scope_reason
from .conjecture import FieldReport, check_conjecture
from .convergents import negative_norm_minimizers, norm_table
from .errors import FactorizationError, InvariantError, NoFamilyError, QuadIndecError
from .indec.core import norm_semiconvergent

__all__ = [
    "FamilySpec",
    "FamilyMember",
    "SymbolicNorms",
    "PREDICATES",
    "continuant_matrix",
    "solve_family",
    "member_expands",
    "admissible_xs",
    "locate",
    "symbolic_norms",
    "minimal_polys",
    "maximal_polys",
    "family_search",
]


def continuant_matrix(word: Iterable[int]) -> tuple[int, int, int, int]:
    """``(A, B, B', C)`` with ``prod [[u, 1], [1, 0]] = [[A, B], [B', C]]``, left to right."""
    a, b, b2, c = 1, 0, 0, 1
    for u in word:
        a, b, b2, c = a * u + b, a, b2 * u + c, b2
    return a, b, b2, c


def _check_word(word) -> tuple[int, ...]:
    word = tuple(int(u) for u in word)
    if any(u < 1 for u in word):
        raise ValueError("period entries must be positive integers")
    if word != word[::-1]:
        raise NoFamilyError(f"word {list(word)} is not a palindrome")
    return word


@dataclass(frozen=True)
class FamilySpec:
    word: tuple[int, ...]
    A: int
    B: int
    C: int
    u0_poly: IntPoly
    D_poly: IntPoly
    modulus_step: int
    x_min: int

    @property
    def s(self) -> int:
        return len(self.word) + 1

    def u0(self, x: int) -> int:
        return self.u0_poly(x)

    def D(self, x: int) -> int:
        return self.D_poly(x)

    def as_dict(self) -> dict:
        return {
            "word": [str(u) for u in self.word],
            "A": str(self.A),
            "B": str(self.B),
            "C": str(self.C),
            "u0_poly": [str(c) for c in self.u0_poly.coeffs],
            "D_poly": [str(c) for c in self.D_poly.coeffs],
            "modulus_step": str(self.modulus_step),
            "x_min": str(self.x_min),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> FamilySpec:
        return cls(
            word=tuple(int(u) for u in d["word"]),
            A=int(d["A"]),
            B=int(d["B"]),
            C=int(d["C"]),
            u0_poly=IntPoly(int(c) for c in d["u0_poly"]),
            D_poly=IntPoly(int(c) for c in d["D_poly"]),
            modulus_step=int(d["modulus_step"]),
            x_min=int(d["x_min"]),
        )

    @classmethod
    def from_json(cls, text: str) -> FamilySpec:
        return cls.from_dict(json.loads(text))


def member_expands(spec: FamilySpec, x: int) -> bool:
    """Whether ``sqrt(D(x))`` expands to exactly ``[u0(x); word, 2*u0(x)]``."""
    D, u0 = spec.D(x), spec.u0(x)
    r = isqrt(D)
    if u0 < 1 or r * r == D or r != u0:
        return False
    cf = expand_sqrt(D)
    return cf.u0 == u0 and cf.period == spec.word + (2 * u0,)


def solve_family(word: Iterable[int], verify: int = 3) -> FamilySpec:
    """The family of ``D`` whose root has period interior ``word``.

    ``u0(x) = u* + m*x`` with ``m = A / gcd(2, A)`` and ``u*`` the least
    positive solution of ``2*B*u0 = -C (mod A)``. The first ``verify``
    admissible parameters are checked by re-expansion.
    """
    word = _check_word(word)
    A, B, B2, C = continuant_matrix(word)
    if B != B2:
        raise InvariantError("continuant of a palindrome must be symmetric")
    g = gcd(2, A)
    if C % g:
        raise NoFamilyError(f"A = {A} is even but C = {C} is odd: 2*B*u0 + C is never divisible by A")
    m = A // g
    rhs = (-C // g) % m
    lead = (2 * B // g) % m
    ustar = rhs * pow(lead, -1, m) % m if m > 1 else 0
    if ustar == 0:
        ustar = m
    u0_poly = IntPoly((ustar, m))
    D_poly = u0_poly * u0_poly + (u0_poly * (2 * B) + C).exact_div(A)
    floor = max(word, default=0) + 1
    x_min = max(0, -(-(floor - ustar) // m))
    spec = FamilySpec(word, A, B, C, u0_poly, D_poly, m, x_min)
    for x in admissible_xs(spec, verify):
        if not member_expands(spec, x):
            raise InvariantError(f"family member x = {x} does not reproduce the word")
    return spec


def admissible_xs(spec: FamilySpec, count: int, start: int | None = None) -> list[int]:
    """The first ``count`` parameters ``x >= x_min`` with ``D(x)`` not a perfect square."""
    x = spec.x_min if start is None else max(start, spec.x_min)
    out = []
    while len(out) < count:
        D = spec.D(x)
        r = isqrt(D)
        if r * r != D:
            out.append(x)
        x += 1
    return out


def locate(spec: FamilySpec, D: int) -> int | None:
    """The parameter ``x`` with ``D(x) = D``, if any."""
    shift = isqrt(D) - spec.u0_poly.coeff(0)
    x, rem = divmod(shift, spec.modulus_step)
    if rem or x < 0 or spec.D(x) != D:
        return None
    return x


@dataclass(frozen=True)
class SymbolicNorms:
    """``N_i(x)`` for ``-1 <= i <= s`` and ``M_i(x)`` for admissible odd ``i``."""

    N: dict[int, IntPoly]
    M: dict[int, IntPoly] = field(default_factory=dict)


def _u_poly(spec: FamilySpec, j: int) -> IntPoly:
    if j == 0:
        return spec.u0_poly
    k = (j - 1) % spec.s
    if k == spec.s - 1:
        return spec.u0_poly * 2
    return IntPoly.const(spec.word[k])


def symbolic_norms(spec: FamilySpec, check_at: Iterable[int] = ()) -> SymbolicNorms:
    """Norms of convergents as polynomials in ``x``.

    ``p_i(x), q_i(x)`` follow the convergent recurrence; ``N_i = (-1)^(i+1)
    (p_i^2 - D q_i^2)`` must collapse to degree at most 1. ``M_i`` comes
    from ``4 M_i = u_{i+2}^2 N_{i+1} + 2 (N_{i+2} + N_i)`` for odd
    ``-1 <= i <= s-2`` with ``u_{i+2}`` even.
    """
    s = spec.s
    p_prev, p = IntPoly.const(1), spec.u0_poly
    q_prev, q = IntPoly(), IntPoly.const(1)
    N = {-1: IntPoly.const(1)}
    for i in range(0, s + 1):
        val = p * p - spec.D_poly * q * q
        N[i] = val if i % 2 else -val
        if N[i].degree > 1:
            raise InvariantError(f"N_{i}(x) has degree {N[i].degree}")
        u = _u_poly(spec, i + 1)
        p_prev, p = p, u * p + p_prev
        q_prev, q = q, u * q + q_prev
    M = {}
    for i in range(-1, s - 1, 2):
        u = _u_poly(spec, i + 2)
        if u.degree == 0 and u.coeff(0) % 2:
            continue
        M[i] = (u * u * N[i + 1] + (N[i + 2] + N[i]) * 2).exact_div(4)
    out = SymbolicNorms(N, M)
    for x in check_at:
        _check_against_field(spec, out, x)
    return out


def _check_against_field(spec: FamilySpec, sym: SymbolicNorms, x: int):
    cf = expand_sqrt(spec.D(x))
    tab = norm_table(cf)
    for i, poly in sym.N.items():
        if poly(x) != tab.N(i):
            raise InvariantError(f"N_{i}({x}) mismatch")
    for i, poly in sym.M.items():
        if poly(x) != norm_semiconvergent(cf, i, cf.u(i + 2) // 2, tab):
            raise InvariantError(f"M_{i}({x}) mismatch")


def minimal_polys(polys: dict[int, IntPoly], x_min: int) -> list[int]:
    """Keys whose linear polynomial is ``<=`` every other one on ``[x_min, oo)``."""
    return [i for i, p in polys.items() if all(p.dominated_by(q, x_min) for q in polys.values())]


def maximal_polys(polys: dict[int, IntPoly], x_min: int) -> list[int]:
    """Keys whose linear polynomial is ``>=`` every other one on ``[x_min, oo)``."""
    return [i for i, p in polys.items() if all(q.dominated_by(p, x_min) for q in polys.values())]


PREDICATES = ("mod4", "squarefree", "prime-N")


@dataclass(frozen=True)
class FamilyMember:
    x: int
    D: int
    report: FieldReport | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        d = {"x": str(self.x), "D": str(self.D)}
        if self.report is not None:
            d["report"] = self.report.as_dict()
        if self.error is not None:
            d["error"] = self.error
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> FamilyMember:
        rep = FieldReport.from_dict(d["report"]) if "report" in d else None
        return cls(int(d["x"]), int(d["D"]), rep, d.get("error"))


def _min_even_norm(spec: FamilySpec, x: int) -> int:
    return negative_norm_minimizers(expand_sqrt(spec.D(x)))[0]


def _search_one(args):
    spec, x, predicates, budget = args
    D = spec.D(x)
    if x < spec.x_min:
        return FamilyMember(x, D, error=f"below x_min = {spec.x_min}: u0 too small for the word")
    r = isqrt(D)
    if r * r == D:
        return FamilyMember(x, D, error="out of scope: D is a perfect square")
    try:
        if "mod4" in predicates and D % 4 not in (2, 3):
            return None
        if "squarefree" in predicates and not is_squarefree(D, budget):
            return None
        if "prime-N" in predicates and not is_prime(_min_even_norm(spec, x)):
            return None
        reason = in_scope_reason(D)
        if reason:
            return FamilyMember(x, D, error=f"out of scope: {reason}")
        return FamilyMember(x, D, check_conjecture(D, budget, squarefree=True))
    except FactorizationError as e:
        return FamilyMember(x, D, error=f"factor-budget: {e}")
    except QuadIndecError as e:
        return FamilyMember(x, D, error=f"{type(e).__name__}: {e}")


def family_search(
    spec: FamilySpec,
    xs: Iterable[int],
    predicates: Iterable[str] = (),
    workers: int = 1,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
) -> list[FamilyMember]:
    """Members ``x`` (ascending) passing ``predicates``, each with its field report.

    Predicates: ``mod4`` (``D = 2, 3 mod 4``), ``squarefree``, ``prime-N``.
    Survivors that are still out of scope, or whose factorization runs out
    of budget, carry an ``error`` instead of a report.
    """
    predicates = tuple(predicates)
    bad = set(predicates) - set(PREDICATES)
    if bad:
        raise ValueError(f"unknown predicate(s): {', '.join(sorted(bad))}")
    jobs = [(spec, x, predicates, factor_budget) for x in sorted(set(xs))]
    if workers <= 1 or len(jobs) <= 1:
        results = map(_search_one, jobs)
        return [m for m in results if m is not None]
    with get_context("spawn").Pool(workers) as pool:
        return [m for m in pool.imap(_search_one, jobs) if m is not None]
