from math import isqrt

import pytest
from hypothesis import given, strategies as st
from sympy.ntheory.continued_fraction import continued_fraction_periodic

from quadindec.arith import QuadSurd
from quadindec.cfrac import expand_sqrt, in_scope_reason, partial_quotient, tail_surd
from quadindec.errors import OutOfScopeError, PeriodBudgetError

from conftest import BIG_D

BIG_WORD = (10, 2, 12, 6, 1, 3, 4, 3, 12, 3, 4, 3, 1, 6, 12, 2, 10)


def test_small_examples():
    cf = expand_sqrt(2)
    assert (cf.u0, cf.period) == (1, (2,))
    cf = expand_sqrt(6)
    assert (cf.u0, cf.period, cf.s) == (2, (2, 4), 2)
    assert partial_quotient(cf, 0) == 2
    assert partial_quotient(cf, 3) == 2


def test_counterexample_expansion():
    cf = expand_sqrt(BIG_D)
    assert cf.u0 == 154951144645
    assert cf.word == BIG_WORD
    assert cf.period[-1] == 2 * cf.u0
    assert partial_quotient(cf, 9) == 12


def test_printed_word_is_not_a_period():
    # the word with u_12 = 2 cannot be the interior of any sqrt period
    printed = BIG_WORD[:11] + (2,) + BIG_WORD[12:]
    assert printed != printed[::-1]
    assert expand_sqrt(BIG_D).word != printed


def test_tails():
    assert tail_surd(expand_sqrt(2), 1) == QuadSurd(1, 1, 2)
    cf = expand_sqrt(6)
    assert tail_surd(cf, 0) == QuadSurd(0, 1, 6)
    assert tail_surd(cf, 1) == QuadSurd(2, 2, 6)
    assert tail_surd(cf, 2) == QuadSurd(2, 1, 6)


@pytest.mark.parametrize("D", [0, 1, 4, 9, 10**12])
def test_rejects_squares_and_small(D):
    with pytest.raises(OutOfScopeError):
        expand_sqrt(D)


def test_period_budget():
    with pytest.raises(PeriodBudgetError):
        expand_sqrt(BIG_D + 1, max_period=1000)


def test_non_squarefree_accepted_but_flagged():
    cf = expand_sqrt(27)
    assert (cf.u0, cf.period) == (5, (5, 10))
    assert "squarefree" in in_scope_reason(27)
    assert "mod 4" in in_scope_reason(5)
    assert in_scope_reason(7) is None


def _sympy_cf(D):
    u0, period = continued_fraction_periodic(0, 1, D)
    return u0, tuple(period)


def test_agrees_with_sympy_up_to_500():
    for D in range(2, 501):
        if isqrt(D) ** 2 != D:
            cf = expand_sqrt(D)
            assert (cf.u0, cf.period) == _sympy_cf(D), D


@given(st.integers(501, 10**6).filter(lambda d: isqrt(d) ** 2 != d))
def test_agrees_with_sympy_large(D):
    cf = expand_sqrt(D)
    assert (cf.u0, cf.period) == _sympy_cf(D)


@given(st.integers(2, 10**6).filter(lambda d: isqrt(d) ** 2 != d))
def test_period_structure(D):
    cf = expand_sqrt(D)
    assert cf.u0 == isqrt(D)
    assert cf.period[-1] == 2 * cf.u0
    assert cf.word == cf.word[::-1]
    assert all(u >= 1 for u in cf.period)
    # minimality: the tail pair first repeats after s steps
    assert len(set(cf.tails)) == cf.s


@given(st.integers(2, 10**5).filter(lambda d: isqrt(d) ** 2 != d))
def test_tail_recurrence_exact(D):
    cf = expand_sqrt(D)
    for i in range(0, min(3 * cf.s, 120) + 1):
        c, nxt = tail_surd(cf, i).value(), tail_surd(cf, i + 1).value()
        assert (c - cf.u(i) - 1 / nxt).is_zero()
        if i >= 1:
            assert c > 1
