from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from djkm.arith import C, RatFuncC, parse_ratfunc, specialize_c
from djkm.omega import (
    OmegaClass,
    cocycle,
    lemma_relation,
    reduce,
    reduce_u_monomial,
    sigma_omega,
)
from djkm.ring import CurveSpec, DiffNormalForm, RingElem, djkm_curve, ring_d, sigma_diff
from oracles import linear_algebra_class

R = djkm_curve()
w0, wm1, wm2, wm3, wm4 = (OmegaClass.basis(k) for k in (0, -1, -2, -3, -4))


def udt(k, curve=R):
    return DiffNormalForm(RingElem({(k, 1): 1}, curve), RingElem({}, curve))


def test_t_u_dt():
    assert reduce(udt(1)) == wm3 * Fraction(1, 2) + wm1 * (C / 2)


def test_t4_u_dt():
    assert reduce(udt(4)) == wm4 * parse_ratfunc("(32*c^2-5)/35") + wm2 * parse_ratfunc("8*c/35")


def test_exact_form_vanishes():
    assert reduce(DiffNormalForm(R.t(4, 5), R.zero())).is_zero()


def test_t_minus7_u_dt():
    # downward: w_-7 = c w_-5 and w_-5 = (w_-1 + c w_-3)/2 ; sigma of the t^3 u dt row agrees
    expected = (wm3 * C + wm1) * (C / 2)
    assert reduce(udt(-7)) == expected
    assert reduce(udt(-7)) == -sigma_omega(reduce(udt(3)))


def test_basis_window_is_fixed():
    for k in (-1, -2, -3, -4):
        assert reduce(udt(k)) == OmegaClass.basis(k)
    assert reduce(DiffNormalForm(R.t(-1), R.zero())) == w0


def test_cocycle_examples():
    assert cocycle(R.t(-1), R.t()) == w0
    assert cocycle(R.u(), R.u()).is_zero()
    assert cocycle(R.u(), R.t()) == wm4


def test_cocycle_is_reduce_of_f_dg():
    f = R.u(3) + R.t(-2, C)
    g = R.u(-4) * 3 + R.t(5)
    assert cocycle(f, g) == reduce(ring_d(g).times(f))


# -- lemma relation -------------------------------------------------------------


def test_lemma_m2_i_minus3():
    rel = lemma_relation(2, R, -3)
    assert rel.lead == (0, 6)
    assert rel.tail[0] == (-4, -6)
    assert all(not a for _, a in rel.tail[1:])


def test_lemma_m2_i_minus1():
    rel = lemma_relation(2, R, -1)
    assert rel.lead == (2, 10)
    nonzero = {e: a for e, a in rel.tail if a}
    assert nonzero == {-2: -2, 0: -8 * C}
    # moved to the right-hand side: 10 [t^2 u dt] = 2 [t^-2 u dt] + 8c [u dt]
    assert {e: a for e, a in rel.rhs() if a} == {-2: 2, 0: 8 * C}


def test_lemma_m3_quadratic():
    a0, a1 = parse_ratfunc("3"), parse_ratfunc("5")
    rel = lemma_relation(3, CurveSpec(3, (a0, a1, 1)), 0)
    assert rel.lead == (1, 8)
    assert rel.tail == ((-1, RatFuncC.const(0)), (0, a1 * 4))


@pytest.mark.parametrize("i", range(-10, 11))
def test_lemma_matches_normalized_recursion(i):
    k = i + 3
    rel = lemma_relation(2, R, i)
    assert rel.lead == (k, 6 + 2 * k)
    tail = {e: a for e, a in rel.tail if a}
    expected = {k - 4: RatFuncC.const(2 * (k - 3)), k - 2: -4 * k * C}
    assert tail == {e: a for e, a in expected.items() if a}


@pytest.mark.parametrize("i", range(-16, 17))
def test_lemma_relation_reduces_to_zero(i):
    assert reduce(lemma_relation(2, R, i).as_differential(R)).is_zero()


# -- oracle comparisons -----------------------------------------------------------


@pytest.mark.parametrize("c0", [Fraction(1, 3), Fraction(-5, 2)])
@pytest.mark.parametrize("k", range(-16, 17))
def test_reduce_matches_linear_algebra(k, c0):
    expected = linear_algebra_class(k, (1, 0, -2 * c0, 0, 1))
    got = reduce_u_monomial(k)
    assert tuple(specialize_c(got[-b], c0) for b in (1, 2, 3, 4)) == expected
    assert not got.lam0


GENERAL = CurveSpec(2, tuple(RatFuncC.const(a) for a in (Fraction(2), Fraction(-1, 3), Fraction(3), Fraction(5, 7), 1)))


@pytest.mark.parametrize("k", range(-12, 13))
def test_general_quartic_matches_linear_algebra(k):
    expected = linear_algebra_class(k, (2, Fraction(-1, 3), 3, Fraction(5, 7), 1))
    got = reduce_u_monomial(k, GENERAL)
    assert tuple(got[-b].constant_value() for b in (1, 2, 3, 4)) == expected


# -- invariants ------------------------------------------------------------------


@pytest.mark.parametrize("s", [0, 1])
@pytest.mark.parametrize("i", range(-10, 11))
def test_exactness_kernel(i, s):
    assert reduce(ring_d(R.monomial(i, s))).is_zero()


coeff = st.sampled_from([RatFuncC.const(1), RatFuncC.const(-3), C, C * C - 2])
elements = st.lists(st.tuples(st.integers(-6, 6), st.integers(0, 1), coeff), min_size=1, max_size=3).map(
    lambda ms: sum((R.monomial(i, s, f) for i, s, f in ms), R.zero())
)


@settings(max_examples=80, deadline=None)
@given(elements, elements)
def test_leibniz_compatibility(f, g):
    assert reduce(ring_d(g).times(f) + ring_d(f).times(g)).is_zero()
    assert reduce(ring_d(f * g)).is_zero()


@pytest.mark.parametrize("kind", ["dt", "du"])
@pytest.mark.parametrize("s", [0, 1])
@pytest.mark.parametrize("i", range(-8, 9))
def test_sigma_equivariance(i, s, kind):
    mono = R.monomial(i, s)
    form = DiffNormalForm(mono, R.zero()) if kind == "dt" else DiffNormalForm(R.zero(), mono)
    assert reduce(sigma_diff(form)) == sigma_omega(reduce(form))


def test_sigma_on_basis():
    assert sigma_omega(w0) == -w0
    assert sigma_omega(wm1) == -wm3 and sigma_omega(wm3) == -wm1
    assert sigma_omega(wm2) == -wm2 and sigma_omega(wm4) == -wm4


def test_json_round_trip():
    w = reduce(udt(5))
    data = w.to_json()
    assert list(data) == ["omega0", "omega_m1", "omega_m2", "omega_m3", "omega_m4"]
    assert data["omega_m3"] == "(5*c^2-1)/8"
    assert OmegaClass.from_json(data) == w


def test_reduce_rejects_unsupported_curves():
    cubic = CurveSpec(2, (1, 0, 0, 1))
    with pytest.raises(ValueError):
        reduce(DiffNormalForm(RingElem({(0, 1): 1}, cubic), RingElem({}, cubic)))
