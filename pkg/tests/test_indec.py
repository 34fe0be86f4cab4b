from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadindec.arith import QuadInt
from quadindec.cfrac import expand_sqrt, in_scope_reason
from quadindec.convergents import alpha, fundamental_totally_positive_unit, negative_norm_minimizers, norm_table
from quadindec.indec import (
    argmax_r,
    brute_force_indecomposables,
    canonical_rep,
    domain_indecomposables,
    enumerate_indecomposables,
    find_decomposition,
    is_indecomposable,
    max_indec_norm,
    norm_semiconvergent,
    norm_semiconvergent_expanded,
    semiconvergent,
)

from conftest import BIG_D

in_scope = st.integers(2, 10**5).filter(lambda d: in_scope_reason(d) is None)


def orbits(elements, D):
    eps = fundamental_totally_positive_unit(expand_sqrt(D))
    return {canonical_rep(a, eps) for a in elements}


def test_semiconvergent_examples():
    cf = expand_sqrt(6)
    assert semiconvergent(cf, -1, 1).value == QuadInt(3, 1, 6)
    assert semiconvergent(cf, 1, 1).value == QuadInt(27, 11, 6)
    assert semiconvergent(cf, 1, 0).value == alpha(cf, 1)


def test_semiconvergent_rejects_bad_indices():
    cf = expand_sqrt(6)
    with pytest.raises(ValueError):
        semiconvergent(cf, 0, 0)
    with pytest.raises(ValueError):
        semiconvergent(cf, 1, 3)


def test_norm_examples():
    cf = expand_sqrt(6)
    assert norm_semiconvergent(cf, 1, 1) == norm_semiconvergent_expanded(cf, 1, 1) == 3
    assert semiconvergent(cf, 1, 1).value.norm() == 729 - 726
    assert norm_semiconvergent(cf, -1, 0) == 1
    assert norm_semiconvergent(expand_sqrt(BIG_D), 7, 6) == 977608342706


def test_enumeration_small_fields():
    two = enumerate_indecomposables(expand_sqrt(2))
    assert [s.value for s in two] == [QuadInt(1, 0, 2), QuadInt(2, 1, 2)]
    # the longer lists {1, 3+sqrt6, 5+2sqrt6, 27+11sqrt6} and {1, 2+sqrt3}
    # repeat orbits: 5+2sqrt6 and 2+sqrt3 are units, 27+11sqrt6 = (5+2sqrt6)(3+sqrt6)
    six = [s.value for s in enumerate_indecomposables(expand_sqrt(6))]
    assert six == [QuadInt(1, 0, 6), QuadInt(3, 1, 6)]
    assert orbits(six, 6) == orbits([QuadInt(1, 0, 6), QuadInt(3, 1, 6), QuadInt(5, 2, 6), QuadInt(27, 11, 6)], 6)
    three = [s.value for s in enumerate_indecomposables(expand_sqrt(3))]
    assert orbits(three, 3) == orbits([QuadInt(1, 0, 3), QuadInt(2, 1, 3)], 3)


def test_max_norm_examples():
    assert max_indec_norm(expand_sqrt(2)) == (2, -1, 1)
    assert max_indec_norm(expand_sqrt(6)) == (3, -1, 1)
    assert max_indec_norm(expand_sqrt(BIG_D)) == (977608342706, 7, 6)


def test_argmax_examples():
    assert argmax_r(expand_sqrt(BIG_D), 7) == 6
    assert argmax_r(expand_sqrt(6), -1) == 1
    assert argmax_r(expand_sqrt(3), -1) == 0


def test_brute_force_examples():
    got = brute_force_indecomposables(2, 8)
    assert got == {QuadInt(1, 0, 2), QuadInt(2, 1, 2), QuadInt(2, -1, 2), QuadInt(3, 2, 2), QuadInt(3, -2, 2)}
    got = brute_force_indecomposables(6, 12)
    assert {QuadInt(1, 0, 6), QuadInt(3, 1, 6), QuadInt(3, -1, 6), QuadInt(5, 2, 6)} <= got
    assert QuadInt(2, 0, 6) not in got
    assert all(a.is_totally_positive() for a in got)


@given(in_scope)
def test_three_way_norms(D):
    cf = expand_sqrt(D)
    tab = norm_table(cf)
    for i in range(-1, min(cf.s, 40), 2):
        for r in range(cf.u(i + 2) + 1) if cf.u(i + 2) < 60 else (0, 1, cf.u(i + 2) // 2, cf.u(i + 2)):
            direct = semiconvergent(cf, i, r).value.norm()
            assert direct == norm_semiconvergent(cf, i, r, tab) == norm_semiconvergent_expanded(cf, i, r, tab)


@given(in_scope)
def test_boundaries_and_signs(D):
    cf = expand_sqrt(D)
    tab = norm_table(cf)
    for i in range(-1, min(cf.s, 40), 2):
        top = cf.u(i + 2)
        assert semiconvergent(cf, i, top).value == alpha(cf, i + 2)
        assert semiconvergent(cf, i, 0).value.is_totally_positive()
        t, n = tab.T(i + 1), tab.N(i + 1)
        assert t > 0 and t - top * n < 0
        assert abs(2 * t - top * n) < n
        r0 = argmax_r(cf, i, tab)
        if top % 2 == 0:
            assert r0 == top // 2
        assert Fraction(top, 2) - 1 < r0 < Fraction(top, 2) + 1
        best = max(norm_semiconvergent(cf, i, r, tab) for r in range(top + 1)) if top < 60 else None
        if best is not None:
            assert norm_semiconvergent(cf, i, r0, tab) == best


@given(in_scope)
def test_bounds(D):
    cf = expand_sqrt(D)
    n, _ = negative_norm_minimizers(cf)
    m, i, r = max_indec_norm(cf)
    assert m * n <= D <= D * n
    # the recorded location is the first maximum over the enumeration
    values = [norm_semiconvergent(cf, s.i, s.r) for s in enumerate_indecomposables(cf)] if cf.s < 60 else None
    if values is not None:
        assert m == max(values)


# oracle

@pytest.mark.parametrize("D", [2, 3, 6, 7, 10, 11, 14, 15, 23, 30, 35, 42, 51, 110])
def test_enumeration_matches_naive_brute_force(D):
    # naive search over a trace window covering a fundamental domain, then orbit comparison
    cf = expand_sqrt(D)
    eps = fundamental_totally_positive_unit(cf)
    enum = {s.value for s in enumerate_indecomposables(cf)}
    bound = 2 * max(a.trace() for a in enum) + 2 * eps.trace()
    if bound > 400:
        pytest.skip("brute force too large")
    brute = brute_force_indecomposables(D, bound)
    assert orbits(brute, D) == orbits(enum, D)


@given(st.integers(2, 300).filter(lambda d: in_scope_reason(d) is None))
def test_domain_search_matches_enumeration(D):
    cf = expand_sqrt(D)
    eps = fundamental_totally_positive_unit(cf)
    assert domain_indecomposables(D, eps) == orbits((s.value for s in enumerate_indecomposables(cf)), D)


@given(in_scope, st.integers(1, 50), st.integers(-50, 50))
def test_decomposition_oracles_agree(D, x, y):
    a = QuadInt(x, y, D)
    if not a.is_totally_positive() or x > 40:
        return
    from quadindec.indec.oracle import _naive_decomposable

    beta = find_decomposition(a)
    assert (beta is not None) == _naive_decomposable(a)
    if beta is not None:
        assert beta.is_totally_positive() and (a - beta).is_totally_positive()


@given(in_scope)
def test_enumerated_are_indecomposable(D):
    cf = expand_sqrt(D)
    if cf.s > 30:
        return
    for s in enumerate_indecomposables(cf)[:60]:
        assert is_indecomposable(s.value)
