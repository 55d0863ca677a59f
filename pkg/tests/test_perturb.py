from fractions import Fraction as Q
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from instanton import perturb as pt
from instanton.exactalg import DomainError, Poly, Series
from instanton.perturb import EpsSeries, LogPoly

rat = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(lambda x: x != 0)


def _c_numeric(e1, e2, nmax):
    """e1 e2 c_n at a rational point: n! [t^n] of e1 e2 t^2 / ((e^{e1 t}-1)(e^{e2 t}-1))."""
    def h(e):
        # (e^{e t} - 1) / t
        return Series({k: Q(e) ** (k + 1) / factorial(k + 1) for k in range(nmax + 1)}, nmax + 1, var="t")
    inv = (h(e1) * h(e2)).inverse() * (Q(e1) * Q(e2))
    return [inv.coeff(n) * factorial(n) for n in range(nmax + 1)]


def test_c_low_orders():
    c = pt.c_coefficients(3)
    e1, e2 = Poly.var(2, 0), Poly.var(2, 1)
    assert c[0] == Poly.const(2, Q(1))
    assert c[1] == (e1 + e2) * Q(-1, 2)
    assert c[2] == (e1 * e1 + e2 * e2 + e1 * e2 * 3) * Q(1, 6)
    assert c[3] == (e1 * e1 * e2 + e1 * e2 * e2) * Q(-1, 4)


def test_c_series_division_matches_bernoulli_product():
    assert pt.c_coefficients(12) == pt.c_coefficients_bernoulli(12)


@settings(max_examples=25)
@given(rat, rat)
def test_c_matches_pointwise_oracle(e1, e2):
    ref = _c_numeric(e1, e2, 8)
    got = pt.c_coefficients(8)
    assert [p(e1, e2) for p in got] == ref


@given(st.integers(0, 12))
def test_c_homogeneous_and_symmetric(n):
    p = pt.c_coefficients(12)[n]
    assert all(i + j == n for (i, j) in p.terms)
    assert all(p.coeff((j, i)) == c for (i, j), c in p.terms.items())


def test_gamma_leading_structures():
    g = pt.gamma2_expansion(4)
    L, x = LogPoly.L(), LogPoly.x
    assert g.series.coeff(0, 0) == x(2) * L * Q(-1, 2) + x(2, Q(3, 4))
    # degree 1: (-x L + x)(e1 + e2)/2
    d1 = (x(1) * L * -1 + x(1)) * Q(1, 2)
    assert g.series.coeff(1, 0) == d1 and g.series.coeff(0, 1) == d1
    # degree 2: -(e1^2 + e2^2 + 3 e1 e2) L / 12
    assert g.series.coeff(2, 0) == L * Q(-1, 12) and g.series.coeff(1, 1) == L * Q(-3, 12)
    # degree 3: e1e2 c_3 x^{-1} / 6 with e1e2 c_3 = -(e1^2 e2 + e1 e2^2)/4
    assert g.series.coeff(2, 1) == x(-1, Q(-1, 24))
    assert g.series.coeff(3, 0) == LogPoly()


def test_gamma_needs_degree_two():
    with pytest.raises(DomainError):
        pt.gamma2_expansion(1)


@pytest.mark.parametrize("order", [2, 5, 8])
def test_difference_equation(order):
    assert pt.difference2_residual(order).is_zero()
    assert pt.difference1_residual(order).is_zero()


def test_difference_equation_detects_a_wrong_coefficient():
    g = pt.gamma2_expansion(6).series + EpsSeries({(2, 2): LogPoly.x(-2, Q(1, 7))}, 6)
    lhs = g.shift_x(-1, 0) + g.shift_x(0, -1) - g - g.shift_x(-1, -1)
    res = lhs - EpsSeries({(1, 1): LogPoly.L()}, 6)
    assert not res.is_zero()


@pytest.mark.parametrize("k", [-3, -2, -1, 0, 1, 2, 3])
def test_shift_identity(k):
    assert pt.pert_shift_residual(k, 6).is_zero()


def test_shift_identity_report():
    rep = pt.check_pert_shift(3, 8)
    assert rep["pass"], rep


@settings(max_examples=15)
@given(st.integers(-3, 3), rat, rat, rat)
def test_sampled_shift_residual_vanishes(k, e1, e2, x):
    assert pt.sampled_shift_residual(k, e1, e2, x, 5) == 0


def test_exponential_and_doubling():
    assert pt.e_u_residual(6).is_zero()
    assert pt.double_residual(6).is_zero()
    assert pt.hbar_double_residual(6).is_zero()
    assert pt.check_e_u_and_double(8)["pass"]


def test_hbar_tail_coefficients():
    g = pt.gamma_hbar_expansion(10)
    # hbar^{2g} x^{2-2g} B_{2g} / (2g (2g-2)); B_4 = -1/30, B_6 = 1/42, B_8 = -1/30, B_10 = 5/66
    table = {2: Q(-1, 30), 3: Q(1, 42), 4: Q(-1, 30), 5: Q(5, 66)}
    for gg, b in table.items():
        assert g.coeff(2 * gg, 0) == LogPoly.x(2 - 2 * gg, b / (2 * gg * (2 * gg - 2)))
    assert g.coeff(4, 0) == LogPoly.x(-2, Q(-1, 240))
    assert pt.check_hbar_tail(5)["pass"]


def test_check_all():
    rep = pt.check_all(6, 2)
    assert rep["pass"]
    assert set(rep["reports"]) == {"difference", "pert_shift", "e_u_and_double", "hbar_tail"}


def test_failure_report_has_counterexample():
    bad = EpsSeries({(1, 2): LogPoly.x(3)}, 4)
    rep = pt._report("demo", bad)
    assert not rep["pass"] and rep["lowest_bad_degree"] == 3 and rep["residual"]


def test_log_ring_symbols_are_independent():
    L, P, u = LogPoly.L(), LogPoly.P(), LogPoly.u()
    assert L != P and L * P != L and (L + P) * (L - P) == L * L - P * P
    assert u * 0 == LogPoly()
