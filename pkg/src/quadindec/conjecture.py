"""Per-field evaluation of the refined Jang-Kim bound and a range scanner.

For an in-scope ``D`` let ``N`` be the minimal absolute value of a negative
norm and ``a`` the least ``a >= 0`` with ``a^2 = D (mod N)``. The conjectured
bound is then ``N(alpha) <= (D - a^2)/N`` for every indecomposable ``alpha``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from math import isqrt
from multiprocessing import get_context
from typing import Iterable, Iterator

from .arith.modsqrt import sqrt_mod_min
from .arith.ntheory import DEFAULT_FACTOR_BUDGET, is_prime, small_primes
from .cfrac import ContinuedFraction, expand_sqrt, in_scope_reason
from .convergents import NormTable, negative_norm_minimizers, norm_table
from .errors import FactorizationError, InvariantError, OutOfScopeError, QuadIndecError
from .indec.core import max_indec_norm, norm_semiconvergent

__all__ = [
    "FieldReport",
    "ScanError",
    "FILTERS",
    "sqrt_mod_min",
    "check_conjecture",
    "jk_witness",
    "bound_check",
    "in_scope_range",
    "scan",
    "parse_record",
    "to_csv",
]

_INT_FIELDS = (
    "D", "u0", "s", "N", "i0_plus_1", "a",
    "jk_bound_num", "jk_bound_den", "conj_bound", "max_norm",
)
_BOOL_FIELDS = ("conjecture_holds", "ds_holds", "jk_holds")
COLUMNS = _INT_FIELDS + ("max_at",) + _BOOL_FIELDS + ("i0_candidates",)


@dataclass(frozen=True)
class FieldReport:
    D: int
    u0: int
    s: int
    N: int
    i0_plus_1: int
    a: int
    jk_bound_num: int
    jk_bound_den: int
    conj_bound: int
    max_norm: int
    max_at: tuple[int, int]
    conjecture_holds: bool
    ds_holds: bool
    jk_holds: bool
    i0_candidates: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        d = {k: str(getattr(self, k)) for k in _INT_FIELDS}
        d["max_at"] = [str(v) for v in self.max_at]
        for k in _BOOL_FIELDS:
            d[k] = getattr(self, k)
        d["i0_candidates"] = [str(v) for v in self.i0_candidates]
        return {k: d[k] for k in COLUMNS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> FieldReport:
        kw = {k: int(d[k]) for k in _INT_FIELDS}
        kw["max_at"] = tuple(int(v) for v in d["max_at"])
        for k in _BOOL_FIELDS:
            if not isinstance(d[k], bool):
                raise ValueError(f"{k} must be a JSON boolean")
            kw[k] = d[k]
        kw["i0_candidates"] = tuple(int(v) for v in d.get("i0_candidates", ()))
        return cls(**kw)

    @classmethod
    def from_json(cls, text: str) -> FieldReport:
        return cls.from_dict(json.loads(text))

    def csv_row(self) -> list[str]:
        d = self.as_dict()
        row = []
        for k in COLUMNS:
            v = d[k]
            if isinstance(v, list):
                v = " ".join(v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            row.append(v)
        return row

    def to_text(self) -> str:
        verdict = "holds" if self.conjecture_holds else "VIOLATION"
        i, r = self.max_at
        return (
            f"D={self.D} u0={self.u0} s={self.s} N={self.N} i0+1={self.i0_plus_1} a={self.a} "
            f"bound={self.conj_bound} max={self.max_norm} at (i,r)=({i},{r}) {verdict}"
        )


@dataclass(frozen=True)
class ScanError:
    """A field the scanner could not finish; emitted in place of its report."""

    D: int
    kind: str
    message: str

    def as_dict(self) -> dict:
        return {"D": str(self.D), "error": self.kind, "message": self.message}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))

    def to_text(self) -> str:
        return f"D={self.D} ERROR {self.kind}: {self.message}"

    def csv_row(self) -> list[str]:
        return [str(self.D)] + [""] * (len(COLUMNS) - 2) + [f"error:{self.kind}"]


def parse_record(text: str) -> FieldReport | ScanError:
    d = json.loads(text)
    if "error" in d:
        return ScanError(int(d["D"]), d["error"], d["message"])
    return FieldReport.from_dict(d)


def to_csv(records: Iterable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for rec in records:
        w.writerow(rec.csv_row())
    return buf.getvalue()


def jk_witness(cf: ContinuedFraction, table: NormTable, i0_plus_1: int) -> tuple[int, int]:
    """``(r, a)`` with ``0 <= r <= u_{i0+2}``, ``a = |T_{i0+1} - r N|`` and ``2a <= N``.

    Raises InvariantError if no such ``r`` exists, or if ``N(alpha_{i0,r})``
    differs from ``(D - a^2)/N``.
    """
    i = i0_plus_1 - 1
    n = table.N(i + 1)
    t = table.T(i + 1)
    r = min(max((2 * t + n) // (2 * n), 0), cf.u(i + 2))
    a = abs(t - r * n)
    if 2 * a > n:
        raise InvariantError(f"no r with |T - rN| <= N/2 for D = {cf.D}")
    if norm_semiconvergent(cf, i, r, table) * n != cf.D - a * a:
        raise InvariantError(f"N(alpha_(i0,r)) != (D - a^2)/N for D = {cf.D}")
    return r, a


def bound_check(D: int) -> tuple[bool, bool, bool]:
    """``(max <= D/N, D/N <= D, witness exists)`` for one field, without sqrt mod N."""
    cf = expand_sqrt(D)
    tab = norm_table(cf)
    n, where = negative_norm_minimizers(cf)
    m, _, _ = max_indec_norm(cf, tab)
    try:
        jk_witness(cf, tab, where[0])
        ok = True
    except QuadIndecError:
        ok = False
    return m * n <= D, n >= 1, ok


def check_conjecture(D: int, factor_budget: int = DEFAULT_FACTOR_BUDGET, squarefree: bool | None = None) -> FieldReport:
    """Evaluate every bound for the field ``Q(sqrt D)``."""
    reason = in_scope_reason(D, squarefree)
    if reason:
        raise OutOfScopeError(reason)
    cf = expand_sqrt(D)
    tab = norm_table(cf)
    n, where = negative_norm_minimizers(cf)
    a = sqrt_mod_min(D, n, factor_budget)
    conj, rem = divmod(D - a * a, n)
    assert rem == 0
    m, i, r = max_indec_norm(cf, tab)
    return FieldReport(
        D=D,
        u0=cf.u0,
        s=cf.s,
        N=n,
        i0_plus_1=where[0],
        a=a,
        jk_bound_num=D,
        jk_bound_den=n,
        conj_bound=conj,
        max_norm=m,
        max_at=(i, r),
        conjecture_holds=m <= conj,
        ds_holds=m <= D,
        jk_holds=m * n <= D,
        i0_candidates=tuple(where),
    )


def in_scope_range(lo: int, hi: int) -> list[int]:
    """In-scope ``D`` in ``[lo, hi]``, squarefreeness decided by a sieve."""
    lo = max(lo, 2)
    if hi < lo:
        return []
    root = isqrt(hi)
    if root > 10**7:
        return [D for D in range(lo, hi + 1) if in_scope_reason(D) is None]
    flags = bytearray([1]) * (hi - lo + 1)
    for p in small_primes(root):
        q = p * p
        start = -(-lo // q) * q
        flags[start - lo :: q] = bytes(len(range(start - lo, hi - lo + 1, q)))
    return [lo + k for k, ok in enumerate(flags) if ok and (lo + k) % 4 in (2, 3)]


FILTERS = ("violations", "prime-N")


def _keep(rec, filters) -> bool:
    if isinstance(rec, ScanError):
        return True
    if "violations" in filters and rec.conjecture_holds:
        return False
    if "prime-N" in filters and not is_prime(rec.N):
        return False
    return True


def _scan_chunk(args):
    Ds, filters, budget = args
    out = []
    for D in Ds:
        try:
            rec = check_conjecture(D, budget, squarefree=True)
        except FactorizationError as e:
            rec = ScanError(D, "factor-budget", str(e))
        except QuadIndecError as e:
            rec = ScanError(D, type(e).__name__, str(e))
        if _keep(rec, filters):
            out.append(rec)
    return out


def scan(
    lo: int,
    hi: int,
    filters: Iterable[str] = (),
    workers: int = 1,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
    chunk: int = 256,
) -> Iterator[FieldReport | ScanError]:
    """Reports for every in-scope ``D`` in ``[lo, hi]``, in ascending order.

    Failures on single fields are yielded inline as ScanError records. Output
    does not depend on ``workers``: chunks are mapped in order.
    """
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    filters = tuple(filters)
    bad = set(filters) - set(FILTERS)
    if bad:
        raise ValueError(f"unknown filter(s): {', '.join(sorted(bad))}")
    Ds = in_scope_range(lo, hi)
    jobs = [(Ds[k : k + chunk], filters, factor_budget) for k in range(0, len(Ds), chunk)]
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            yield from _scan_chunk(job)
        return
    with get_context("spawn").Pool(workers) as pool:
        for batch in pool.imap(_scan_chunk, jobs):
            yield from batch
