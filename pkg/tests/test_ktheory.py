from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from instanton import ktheory as kt
from instanton.exactalg import DomainError, Poly


def _geom(step, deg):
    # {(i, j): 1} for 1/((1 - t1^step)(1 - t2^step)) through total degree deg
    return {(i, j): Q(1) for i in range(0, deg + 1, step) for j in range(0, deg + 1, step) if i + j <= deg}


def _mul(a, b, deg):
    out = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            if i + j + k + l <= deg:
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + c * d
    return out


def test_q_squared_coefficient():
    deg = 8
    g1 = _geom(1, deg)
    want = _mul(g1, g1, deg)
    for e, c in _geom(2, deg).items():
        want[e] = want.get(e, 0) + c
    want = {e: c / 2 for e, c in want.items()}
    assert kt.exponential_form(2, deg)[2] == Poly(2, want)
    assert kt.plethystic_product(2, deg)[2] == Poly(2, want)


def test_hilbert_series():
    rep = kt.hilbert_series_check(6, 8)
    assert rep["pass"] and rep["character_positivity"]


@given(st.integers(1, 5), st.integers(2, 8))
def test_characters_are_positive(q, deg):
    for p in kt.plethystic_product(q, deg):
        assert kt.is_character(p)
    assert kt.plethystic_product(q, deg)[0] == Poly.const(2, Q(1))


def test_gromov_witten_values():
    assert kt.gw_conifold(0, 2) == Q(1, 8)
    assert kt.gw_conifold(1, 3) == Q(1, 36)
    assert kt.gw_conifold(2, 1) == Q(1, 240)
    # |B_6| / (6 * 4!) = (1/42) / 144
    assert kt.gw_conifold(3, 1) == Q(1, 6048)
    with pytest.raises(DomainError):
        kt.gw_conifold(1, 0)


def test_hbar_expansion_leading_terms():
    hx = kt.hbar_expansion(4, 2)
    for d in range(1, 5):
        assert hx[d].coeff(-2) == Q(-1, d ** 3)
        assert hx[d].coeff(0) == Q(1, 12 * d)
    # g = 2, d = 1: B_4 / (4 * 2!) = -1/240
    assert hx[1].coeff(2) == Q(-1, 240)


def test_hbar_check_g4_d6():
    rep = kt.hbar_check(6, 4)
    assert rep["pass"], rep


def test_hook_route_rank_one_two_boxes():
    # |Y| = 2: two partitions, hook lengths {2, 1}; same Laurent series for both
    z = kt.hilbert_hbar_coefficients(2, 2)
    h1 = kt._hook_factor(1, 6)
    h2 = kt._hook_factor(2, 6)
    assert z[2].truncate(3) == (h1 * h2 * 2).truncate(3)


def test_negative_order_rejected():
    with pytest.raises(DomainError):
        kt.hbar_expansion(2, -1)


def test_check_all():
    assert kt.check_all(4, 6, 3)["pass"]
