from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from quadindec.arith import (
    IntPoly,
    QuadInt,
    QuadNum,
    QuadSurd,
    decide_sign,
    factorize,
    is_prime,
    is_squarefree,
    is_totally_positive,
    norm,
    sqrt_interval,
    surd_sign,
    surd_step,
)
from quadindec.arith.modsqrt import sqrt_mod_all, sqrt_mod_min, tonelli_shanks
from quadindec.arith.ntheory import small_primes
from quadindec.errors import FactorizationError, InvariantError, NonResidueError, UndecidedError

from conftest import BIG_D

nonsquare = st.integers(2, 10**6).filter(lambda d: isqrt(d) ** 2 != d)


# quadratic integers

@pytest.mark.parametrize("x,y,D,expected", [(1, 0, 2, 1), (2, 1, 6, -2), (5, 2, 6, 1)])
def test_norm_examples(x, y, D, expected):
    assert norm(QuadInt(x, y, D)) == expected


@pytest.mark.parametrize("x,y,D,expected", [(1, 0, 2, True), (1, 1, 2, False), (3, 1, 6, True), (3, -1, 6, True), (-3, 1, 6, False)])
def test_total_positivity_examples(x, y, D, expected):
    assert is_totally_positive(QuadInt(x, y, D)) is expected


small = st.integers(-10**6, 10**6)


@given(nonsquare, small, small, small, small)
def test_norm_is_multiplicative(D, a, b, c, d):
    u, v = QuadInt(a, b, D), QuadInt(c, d, D)
    assert norm(u * v) == norm(u) * norm(v)
    assert norm(u.conjugate()) == norm(u)


@given(nonsquare, small, small)
def test_total_positivity_matches_embeddings(D, x, y):
    # compare against the two real embeddings at high precision
    from decimal import Decimal, getcontext

    getcontext().prec = 60
    r = Decimal(D).sqrt()
    expected = x + y * r > 0 and x - y * r > 0
    assert QuadInt(x, y, D).is_totally_positive() is expected


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        QuadInt(1, 1, 2) + QuadInt(1, 1, 3)


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), nonsquare)
def test_surd_sign(a, b, D):
    from decimal import Decimal, getcontext

    getcontext().prec = 80
    v = Decimal(a) + Decimal(b) * Decimal(D).sqrt()
    assert surd_sign(a, b, D) == (v > 0) - (v < 0)


@given(nonsquare, st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 50))
def test_quadnum_field_ops(D, a, b, c):
    x = QuadNum(a, b, c, D)
    if x.is_zero():
        return
    assert (x * x.inverse() - 1).is_zero()
    assert x.norm() == (x * x.conjugate()).rational_part


# continued-fraction steps

def test_surd_step_examples():
    assert surd_step(QuadSurd(0, 1, 2)) == (1, QuadSurd(1, 1, 2))
    assert surd_step(QuadSurd(1, 1, 2)) == (2, QuadSurd(1, 1, 2))
    assert surd_step(QuadSurd(0, 1, 6)) == (2, QuadSurd(2, 2, 6))


@given(nonsquare, st.integers(1, 40))
def test_surd_step_invariants(D, steps):
    c = QuadSurd(0, 1, D)
    for _ in range(steps):
        u, nxt = surd_step(c)
        assert (D - nxt.P**2) % nxt.Q == 0
        assert nxt.Q > 0 and u >= 1
        # c = u + 1/next, exactly
        assert (c.value() - u - 1 / nxt.value()).is_zero()
        c = nxt


def test_surd_step_on_integer_raises():
    with pytest.raises((InvariantError, ValueError)):
        surd_step(QuadSurd(2, 1, 4))


# intervals

def test_sqrt_interval_examples():
    iv = sqrt_interval(4, 10)
    assert iv.lo == iv.hi == 2
    iv = sqrt_interval(2, 10)
    assert iv.lo**2 <= 2 <= iv.hi**2
    assert iv.hi - iv.lo <= Fraction(1, 2**10) * iv.hi
    iv = sqrt_interval(BIG_D, 64)
    assert 154951144645 < iv.lo and iv.hi < 154951144646


@given(nonsquare, st.integers(1, 200), st.integers(1, 200))
def test_sqrt_interval_nesting(D, b1, b2):
    b1, b2 = min(b1, b2), max(b1, b2)
    wide, tight = sqrt_interval(D, b1), sqrt_interval(D, b2)
    assert tight.lo**2 <= D <= tight.hi**2
    assert tight.hi - tight.lo <= Fraction(1, 2**b2) * tight.hi
    assert wide.contains_interval(tight)


def test_decide_sign_escalates():
    # convergents of sqrt 2 lie within ~1e-12 of it, on alternating sides
    assert decide_sign(QuadNum(-665857, 470832, 470832, 2), 8) == -1
    assert decide_sign(QuadNum(-1607521, 1136689, 1, 2), 8) == 1
    # interval refinement alone can never certify an exact zero
    with pytest.raises(UndecidedError):
        decide_sign(QuadNum(0, 0, 1, 2), 64, cap=512)


# factorization

@pytest.mark.parametrize("n,expected", [(1, {}), (360, {2: 3, 3: 2, 5: 1}), (24548583881, {24548583881: 1})])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_counterexample_scale():
    # D and the runner-up norm, cross-checked by an independent factorizer
    for n in (BIG_D, 24559791665, 977393040249, 977608342706):
        assert factorize(n) == factorint(n)


def _recompose(f):
    out = 1
    for p, e in f.items():
        out *= p**e
    return out


@given(st.integers(1, 10**30))
def test_factorize_recomposes(n):
    f = factorize(n)
    assert _recompose(f) == n
    assert all(is_prime(p) for p in f)


def test_factorize_semiprime_beyond_trial_division():
    p, q = 1000000007, 998244353
    assert factorize(p * q) == {q: 1, p: 1}
    assert factorize(p**2 * 6) == {2: 1, 3: 1, p: 2}


def test_factorize_budget_is_explicit():
    p, q = 2**61 - 1, 2**89 - 1
    with pytest.raises(FactorizationError):
        factorize(p * q, budget=10)


def test_is_prime_against_sieve():
    ps = set(small_primes(20000))
    assert [n for n in range(20000) if is_prime(n)] == sorted(ps)
    # strong pseudoprimes to several small bases
    for n in (3215031751, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)


def test_is_squarefree_trial_division_oracle():
    limit = 10**6
    flags = bytearray([1]) * (limit + 1)
    for p in small_primes(isqrt(limit)):
        flags[p * p :: p * p] = bytes(len(range(p * p, limit + 1, p * p)))
    sample = list(range(1, 3000)) + list(range(limit - 3000, limit + 1))
    for n in sample:
        assert is_squarefree(n) is bool(flags[n]), n


@pytest.mark.parametrize("n,expected", [(6, True), (12, False), (BIG_D, True)])
def test_is_squarefree_examples(n, expected):
    assert is_squarefree(n) is expected


# modular square roots

def test_sqrt_mod_examples():
    assert sqrt_mod_min(2, 1) == 0
    assert sqrt_mod_min(6, 2) == 0
    assert sqrt_mod_min(BIG_D, 24548583881) == 4030160489


@given(st.integers(0, 10**6), st.integers(1, 3000))
def test_sqrt_mod_all_exhaustive(a, n):
    assert sqrt_mod_all(a, n) == [x for x in range(n) if (x * x - a) % n == 0]


@given(st.sampled_from(small_primes(10**4)[1:]), st.integers(0, 10**9))
def test_tonelli_shanks(p, a):
    a %= p
    if pow(a, (p - 1) // 2, p) == 1:
        x = tonelli_shanks(a, p)
        assert x * x % p == a


def test_nonresidue_is_explicit():
    with pytest.raises(NonResidueError):
        sqrt_mod_min(3, 8)


# polynomials

coeffs = st.lists(st.integers(-100, 100), max_size=5)


@given(coeffs, coeffs, st.integers(-50, 50))
def test_poly_ring_ops(a, b, x):
    p, q = IntPoly(a), IntPoly(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert p.degree == -1 or p.coeffs[-1] != 0


@given(coeffs, st.integers(-5, 5), st.integers(-5, 5), st.integers(-20, 20))
def test_poly_compose_linear(a, s, t, x):
    p = IntPoly(a)
    assert p.compose_linear(s, t)(x) == p(s + t * x)


def test_poly_exact_div():
    assert IntPoly((4, 8)).exact_div(4) == IntPoly((1, 2))
    with pytest.raises(ArithmeticError):
        IntPoly((3, 8)).exact_div(4)


@given(st.integers(-50, 50), st.integers(-5, 5), st.integers(-50, 50), st.integers(-5, 5), st.integers(-10, 10))
def test_linear_dominance(a0, a1, b0, b1, x_min):
    p, q = IntPoly((a0, a1)), IntPoly((b0, b1))
    sampled = all(p(x) <= q(x) for x in range(x_min, x_min + 200))
    if p.dominated_by(q, x_min):
        assert sampled
    elif sampled:
        # only possible if the lines cross beyond the sampled stretch
        assert a1 > b1
