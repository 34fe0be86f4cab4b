"""A field violating the refined Jang-Kim bound, and an itemized re-derivation of it.

For ``D = 24009857226825282345490``:

1. ``D`` is squarefree and ``sqrt(D) = [u0; w, 2 u0]`` with
   ``u0 = 154951144645`` and ``w`` the palindrome below;
2. the smallest absolute negative norm is ``N = N_2 = 24548583881``;
3. the largest indecomposable norm is ``M_7 = 977608342706``, at ``(i, r) = (7, 6)``;
4. the least root of ``a^2 = D (mod N)`` is ``a = 4030160489``;
5. ``(D - a^2)/N = 977393040249 = M_1 < M_7``;

and the runner-up among even-index norms is ``N_8 = 24559791665``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith.modsqrt import sqrt_mod_min
from .arith.ntheory import DEFAULT_FACTOR_BUDGET, is_squarefree
from .cfrac import expand_sqrt
from .convergents import negative_norm_minimizers, norm_table
from .errors import QuadIndecError
from .indec.core import max_indec_norm, norm_semiconvergent

__all__ = ["D", "U0", "WORD", "N", "N_RUNNER_UP", "MAX_NORM", "MAX_AT", "A", "BOUND", "Item", "verify"]

D = 24009857226825282345490
U0 = 154951144645
WORD = (10, 2, 12, 6, 1, 3, 4, 3, 12, 3, 4, 3, 1, 6, 12, 2, 10)
N = 24548583881
N_RUNNER_UP = 24559791665
MAX_NORM = 977608342706
MAX_AT = (7, 6)
A = 4030160489
BOUND = 977393040249

# generous for the 18-term period, tiny next to the ~sqrt(D) period of a generic D
_PERIOD_CAP = 4096


@dataclass(frozen=True)
class Item:
    item: str
    name: str
    expected: str
    got: str
    ok: bool

    def as_dict(self) -> dict:
        return {"item": self.item, "name": self.name, "expected": self.expected, "got": self.got, "ok": self.ok}


def _period(u0, word):
    return f"[{u0}; {', '.join(map(str, word))}, {2 * u0}]"


def verify(d: int = D, factor_budget: int = DEFAULT_FACTOR_BUDGET) -> list[Item]:
    """Recompute every item for ``d`` and compare with the constants above.

    Passing any other ``d`` is a negative control: items that cannot be
    computed are reported as failures rather than raised.
    """
    rows: list[Item] = []

    def add(item, name, expected, got):
        rows.append(Item(item, name, str(expected), str(got), str(expected) == str(got)))

    try:
        cf = expand_sqrt(d, max_period=_PERIOD_CAP)
    except QuadIndecError as e:
        add("1", "u0 and period", _period(U0, WORD), f"error: {e}")
        return rows
    sqf = is_squarefree(d, factor_budget)
    add("1", "u0 and period, squarefree", _period(U0, WORD) + " squarefree", _period(cf.u0, cf.word) + (" squarefree" if sqf else " not squarefree"))
    tab = norm_table(cf)
    n, where = negative_norm_minimizers(cf)
    add("2", "N = N_(i0+1), i0+1", f"{N} at 2", f"{n} at {where[0]}")
    above = sorted((tab.N(i), i) for i in range(0, cf.s, 2) if tab.N(i) > n)
    runner = f"{above[0][0]} at {above[0][1]}" if above else "none"
    add("2b", "runner-up even-index norm", f"{N_RUNNER_UP} at 8", runner)
    m, i, r = max_indec_norm(cf, tab)
    add("3", "max indecomposable norm at (i, r)", f"{MAX_NORM} at {MAX_AT}", f"{m} at {(i, r)}")
    try:
        a = sqrt_mod_min(d, n, factor_budget)
    except QuadIndecError as e:
        add("4", "least a with a^2 = D mod N", A, f"error: {e}")
        return rows
    add("4", "least a with a^2 = D mod N", A, a)
    bound = (d - a * a) // n
    m1 = norm_semiconvergent(cf, 1, cf.u(3) // 2, tab) if cf.s > 3 and cf.u(3) % 2 == 0 else None
    add("5", "(D - a^2)/N = M_1 < max norm", f"{BOUND} = M_1, violated", f"{bound}{' = M_1' if bound == m1 else ''}, {'violated' if m > bound else 'holds'}")
    return rows
