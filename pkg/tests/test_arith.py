from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from djkm.arith import (
    C,
    PolyC,
    PowerSeriesZ,
    RatFuncC,
    format_latex,
    format_ratfunc,
    normalize_ratfunc,
    parse_ratfunc,
    series_formal_integrate,
    series_multiply,
    specialize_c,
)

c = PolyC([0, 1])

# (1 - 2cw + w^2)^(1/2) = 1 - c w + (1 - c^2)/2 w^2 + ...  expanded by hand:
# sqrt(1 + x) = 1 + x/2 - x^2/8,  x = -2cw + w^2
Q2_BY_HAND = PolyC([Fraction(1, 2), 0, Fraction(-1, 2)])


def test_normalize_cancels_common_factor():
    assert normalize_ratfunc(c * c - 1, c - 1) == RatFuncC(c + 1)


def test_normalize_zero_numerator():
    x = normalize_ratfunc(PolyC([]), c ** 3 + 2)
    assert x.is_zero() and x.den == PolyC([1])


def test_normalize_closed_form_quotient():
    x = normalize_ratfunc(-(c * Q2_BY_HAND), c * c - 1)
    assert x == RatFuncC(c, 2)
    assert x.is_polynomial()


def test_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError, match="division by zero polynomial"):
        normalize_ratfunc(c, PolyC([]))


def test_denominator_is_monic():
    x = RatFuncC(c, c * 3 + 6)
    assert x.den == c + 2 and x.num == c * Fraction(1, 3)


def test_specialize():
    assert specialize_c(parse_ratfunc("(32*c^2-5)/35"), Fraction(1, 2)) == Fraction(3, 35)
    assert specialize_c(C, 0) == 0
    with pytest.raises(ZeroDivisionError, match="pole at specialization point"):
        specialize_c(1 / (C * C - 1), 1)


@pytest.mark.parametrize(
    "text",
    ["0", "1", "-7", "c", "-c", "(c/2)", "(c^2/2)", "(32*c^2-5)/35", "c+1", "(1/(c^2-1))", "(-3*c+1)/(c^2-1)", "(3/35)"],
)
def test_render_parse_round_trip(text):
    x = parse_ratfunc(text)
    assert format_ratfunc(x) == text
    assert parse_ratfunc(format_ratfunc(x)) == x


def test_render_fixed_grammar():
    assert format_ratfunc((C * C * 32 - 5) / 35) == "(32*c^2-5)/35"
    assert format_ratfunc(C / 2) == "(c/2)"
    assert format_latex((C * C * 32 - 5) / 35) == r"\frac{32c^{2}-5}{35}"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_ratfunc("c +* 2")
    with pytest.raises(ValueError):
        parse_ratfunc("x")


def test_poly_division():
    q, r = divmod(c ** 3 - 1, c - 1)
    assert q == c * c + c + 1 and r.is_zero()
    with pytest.raises(ArithmeticError):
        (c * c + 1).exact_div(c - 1)


# -- power series -----------------------------------------------------------


def test_multiply_by_one_truncates():
    b = PowerSeriesZ({k: C ** k for k in range(12)}, 12)
    assert series_multiply(PowerSeriesZ.one(20), b, 8) == b.truncate(8)


def test_multiply_small():
    a = PowerSeriesZ({0: 1, 1: 1}, 8)
    b = PowerSeriesZ({0: 1, 1: -1}, 8)
    assert series_multiply(a, b, 8) == PowerSeriesZ({0: 1, 2: -1}, 8)


def test_square_of_root_series():
    # (z sqrt(1 - 2cz^2 + z^4))^2 = z^2 - 2c z^4 + z^6
    from djkm.pfamilies import gegenbauer

    q = gegenbauer(Fraction(-1, 2), 6)
    root = PowerSeriesZ({2 * n + 1: RatFuncC(q[n]) for n in range(6)}, 12)
    sq = series_multiply(root, root, 12)
    assert [sq[k] for k in (2, 4, 6)] == [1, -2 * C, 1]
    assert all(sq[k] == 0 for k in (0, 1, 3, 5, 7, 8, 9, 10, 11))


def test_integrate_gegenbauer_terms():
    from djkm.pfamilies import gegenbauer

    q = gegenbauer(Fraction(3, 2), 5)
    a = PowerSeriesZ({2 * n: RatFuncC(q[n]) * C * 4 for n in range(5)}, 10)
    integral = series_formal_integrate(a)
    for n in range(5):
        assert integral[2 * n + 1] == RatFuncC(q[n]) * C * 4 / (2 * n + 1)


def test_integrate_negative_power_and_zero():
    assert series_formal_integrate(PowerSeriesZ({-2: 1}, 4, -2)) == PowerSeriesZ({-1: -1}, 5, -1)
    assert series_formal_integrate(PowerSeriesZ({}, 4)).coeffs == {}


def test_integrate_rejects_log_term():
    with pytest.raises(ValueError, match="logarithmic term"):
        series_formal_integrate(PowerSeriesZ({-1: C}, 4, -2))


# -- properties -----------------------------------------------------------------

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small_q, min_size=0, max_size=4).map(PolyC)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuncs = st.builds(RatFuncC, polys, nonzero_polys)


@settings(max_examples=60, deadline=None)
@given(polys, nonzero_polys, nonzero_polys)
def test_canonical_form_unique(a, b, g):
    assert normalize_ratfunc(a * g, b * g) == normalize_ratfunc(a, b)


@settings(max_examples=60, deadline=None)
@given(ratfuncs, ratfuncs, ratfuncs)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    if x:
        assert x * x.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(ratfuncs, min_size=1, max_size=6))
def test_integrate_then_differentiate(coeffs):
    a = PowerSeriesZ({k: v for k, v in enumerate(coeffs)}, len(coeffs))
    back = series_formal_integrate(a).derivative()
    assert back.coeffs == a.coeffs


series_st = st.lists(ratfuncs, min_size=1, max_size=5).map(
    lambda cs: PowerSeriesZ({k: v for k, v in enumerate(cs)}, 6)
)


@settings(max_examples=30, deadline=None)
@given(series_st, series_st, series_st)
def test_series_product_commutative_associative(a, b, d):
    assert series_multiply(a, b, 6) == series_multiply(b, a, 6)
    assert series_multiply(series_multiply(a, b, 6), d, 6) == series_multiply(a, series_multiply(b, d, 6), 6)
