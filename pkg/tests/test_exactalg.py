from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from instanton.exactalg import (
    E1, E2, DomainError, Gauss, GradedPoly, I, Linear, PoleError, Poly, RatFunc, Series,
    bernoulli_numbers, generic, rational_sample,
)

rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rat = rat.filter(lambda x: x != 0)


def series_st(order=12, den=1, lead=0):
    return st.lists(rat, min_size=order, max_size=order).map(
        lambda cs: Series({lead + i: c for i, c in enumerate(cs)}, lead + order, den))


def unit_series_st(order=12):
    return st.tuples(nonzero_rat, series_st(order - 1)).map(
        lambda p: Series({0: p[0]}, order) + p[1].shift(1))


# ---------------------------------------------------------------------------
# series ring


@settings(max_examples=200)
@given(series_st(), series_st(), series_st())
def test_series_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * 1 == a and a + 0 == a


@given(unit_series_st())
def test_series_inverse(u):
    assert u * u.inverse() == Series.one(u.prec)


@given(series_st(10).map(lambda s: s.shift(1).truncate(10)))
def test_exp_log_round_trip(f):
    assert f.exp().log() == f


@given(series_st(8, den=4))
def test_denominator_reencoding(s):
    t = s.with_den(8)
    assert t.den == 8 and t.with_den(8) == t
    assert all(e % 2 == 0 for e in t.terms)
    assert {Q(e, 8) for e in t.terms} == {Q(e, 4) for e in s.terms}
    with pytest.raises(Exception):
        s.with_den(6)


def test_truncation_is_respected():
    a = Series({0: Q(1), 1: Q(1)}, 3)
    b = Series({0: Q(1)}, 7)
    assert (a * b).prec == 3 and (a + b).prec == 3
    # q^2 + O(q^3) times 1 + O(q^7) is known below q^3
    assert (Series({2: Q(1)}, 3) * b).prec == 3
    assert (Series({2: Q(1)}, 5) * Series({1: Q(1)}, 3)).prec == 5


def test_exp_of_q():
    e = Series({1: Q(1)}, 6).exp()
    assert [e.coeff(n) for n in range(6)] == [1, 1, Q(1, 2), Q(1, 6), Q(1, 24), Q(1, 120)]
    with pytest.raises(DomainError):
        Series({0: Q(1)}, 3).exp()


def test_exp_with_symbolic_coefficient():
    # exp(q / (e1 e2)): q^2 coefficient is 1 / (2 e1^2 e2^2)
    x = RatFunc.inverse_of_forms([E1, E2])
    z = Series({1: x}, 3).exp()
    assert z.coeff(2) == RatFunc.inverse_of_forms([E1, E1, E2, E2]) * Q(1, 2)


def test_json_round_trip():
    s = Series({-1: Q(3, 7), 2: Q(-5, 2)}, 9, den=4)
    obj = s.to_json_obj()
    assert obj == {"variable": "q", "denom_exp": 4, "order": 9,
                   "terms": [{"pow": -1, "num": "3", "den": "7"},
                             {"pow": 2, "num": "-5", "den": "2"}]}
    assert Series.from_json_obj(obj) == s


# ---------------------------------------------------------------------------
# Gaussian rationals


@given(rat, rat, rat, rat)
def test_gauss_field(a, b, c, d):
    x, y = Gauss(a, b), Gauss(c, d)
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x
    assert x.conj() * x == x.norm()


def test_i_squared():
    assert I * I == -1


# ---------------------------------------------------------------------------
# rational functions with linear-form denominators

point = st.tuples(rat, rat)
linear_st = st.tuples(rat, rat, rat).filter(lambda t: t[1] != 0 or t[2] != 0).map(lambda t: Linear(*t))


def ratfunc_st():
    return st.tuples(
        st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), rat, max_size=4),
        st.lists(linear_st, max_size=2),
    ).map(lambda p: RatFunc.from_poly(Poly(2, p[0])) * RatFunc.inverse_of_forms(p[1]))


def _safe_eval(f, e1, e2):
    try:
        return f(e1, e2)
    except PoleError:
        return None


@settings(max_examples=200)
@given(ratfunc_st(), ratfunc_st(), ratfunc_st())
def test_ratfunc_distributive(f, g, h):
    assert (f + g) * h == f * h + g * h


@settings(max_examples=50)
@given(ratfunc_st(), ratfunc_st(), point)
def test_ratfunc_evaluation_homomorphism(f, g, p):
    vals = [_safe_eval(x, *p) for x in (f, g, f + g, f * g, f - g)]
    if None in vals:
        return
    fv, gv, s, m, d = vals
    assert s == fv + gv and m == fv * gv and d == fv - gv


def test_ratfunc_cancellation_is_canonical():
    f = RatFunc.from_poly((E1 + E2).poly()) * RatFunc.inverse_of_forms([E1 + E2, E1])
    assert f == RatFunc.inverse_of_forms([E1])
    assert f.denominator_forms() == [E1]


def test_ratfunc_pole():
    with pytest.raises(PoleError):
        RatFunc.inverse_of_forms([E1 - E2])(Q(1), Q(1))


def test_taylor_of_geometric():
    # e1 e2 / ((e1 + 1)(e2 + 1)) at total degree 2 is e1 e2
    f = RatFunc.from_poly((E1.poly() * E2.poly())) * RatFunc.inverse_of_forms([E1 + 1, E2 + 1])
    assert f.taylor(2) == E1.poly() * E2.poly()


# ---------------------------------------------------------------------------
# graded polynomials


def test_graded_truncation():
    R = GradedPoly(["t", "u"], [1, 2], 4)
    t, u = R.var("t"), R.var("u")
    p = (t + u) * (t + u) * (t + u)
    assert max(R.degree_of(e) for e in p.terms) <= 4
    assert p.coeff({"t": 2, "u": 1}) == 3
    assert p.coeff({"u": 3}) == 0


def test_graded_exp_is_truncated():
    R = GradedPoly(["t"], [1], 3)
    e = (R.var("t")).exp()
    assert e.coeff([3]) == Q(1, 6) and len(e.terms) == 4


# ---------------------------------------------------------------------------
# misc


def test_bernoulli_table():
    B = bernoulli_numbers(12)
    table = {0: 1, 1: Q(-1, 2), 2: Q(1, 6), 4: Q(-1, 30), 6: Q(1, 42), 8: Q(-1, 30),
             10: Q(5, 66), 12: Q(-691, 2730)}
    for n, v in table.items():
        assert B[n] == v
    assert all(B[n] == 0 for n in (3, 5, 7, 9, 11))


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_samples_are_generic_and_traceless(seed, r):
    s = rational_sample(seed, r)
    assert sum(s.a) == 0 and len(s.a) == r
    assert generic(s, 12)
    assert rational_sample(seed, r).as_dict() == s.as_dict()
