from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from instanton import betti
from instanton.exactalg import DomainError


def _product_oracle(r, nmax):
    """prod_alpha prod_d 1/(1 - t^{2(rd - alpha)} q^d) with plain dicts: {n: {t_exp: count}}."""
    series = {0: {0: 1}}
    for alpha in range(1, r + 1):
        for d in range(1, nmax + 1):
            te = 2 * (r * d - alpha)
            new = {}
            for n, poly in series.items():
                j = 0
                while n + j * d <= nmax:
                    tgt = new.setdefault(n + j * d, {})
                    for e, c in poly.items():
                        tgt[e + j * te] = tgt.get(e + j * te, 0) + c
                    j += 1
            series = new
    return series


def test_small_quot_polynomials():
    assert betti.coefficients(betti.poincare_quot(1, 1)) == {0: 1}
    assert betti.coefficients(betti.poincare_quot(1, 2)) == {0: 1, 2: 1}
    assert betti.coefficients(betti.poincare_quot(2, 0)) == {0: 1}


@pytest.mark.parametrize("r", [1, 2, 3])
def test_quot_against_product_oracle(r):
    ref = _product_oracle(r, 5)
    for n in range(6):
        got = betti.coefficients(betti.poincare_quot(r, n))
        want = {e: c for e, c in ref.get(n, {}).items() if c}
        assert got == want


@pytest.mark.parametrize("r,n", [(r, n) for r in (1, 2, 3) for n in range(1, 7) if r * n <= 12])
def test_quot_coefficients_bounded_and_positive(r, n):
    coeffs = betti.coefficients(betti.poincare_quot(r, n))
    assert all(isinstance(c, int) and c > 0 for c in coeffs.values())
    assert min(coeffs) >= 0 and max(coeffs) <= 2 * (r * n - 1)


def test_rank_one_product_form():
    s = betti.quot_product_series(1, 2)
    assert betti.coefficients(betti.coefficient(s, 1)) == {0: 1}
    assert betti.coefficients(betti.coefficient(s, 2)) == {0: 1, 2: 1}


@pytest.mark.parametrize("r", [1, 2, 3])
def test_quot_generating_function(r):
    assert betti.poincare_quot_gen(r, 5)["pass"]


@pytest.mark.parametrize("r,k,q", [(2, 0, 4), (2, 1, 4), (3, 0, 2), (3, 1, 2)])
def test_blowup_generating_function(r, k, q):
    assert betti.poincare_blowup_gen(r, k, q)["pass"]


def test_ochiai_first_coefficient():
    lhs = betti._ochiai_lhs(1)
    rhs = betti._ochiai_rhs(1)
    assert betti.coefficients(betti.coefficient(lhs, 1)) == {4: 1, 6: 1}
    assert betti.coefficients(betti.coefficient(rhs, 1)) == {4: 1, 6: 1}


def test_ochiai_through_q8():
    assert betti.ochiai_check(8)["pass"]


def test_ochiai_detects_a_change():
    lhs = betti._ochiai_lhs(4)
    rhs = betti._ochiai_rhs(4) * betti._geometric(2, 3, 4)
    assert lhs != rhs


def test_rank2_alternative_sum():
    rep = betti.rank2_alt_check(4)
    assert rep["pass"], rep


@settings(max_examples=10)
@given(st.sampled_from([(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]), st.integers(1, 3))
def test_alternative_sum_pair_order_invariant(rk, q):
    r, k = rk
    if r == 3:
        q = min(q, 2)
    a = betti.alt_fixed_point_series(r, k, q)
    b = betti.alt_fixed_point_series(r, k, q, reverse=True)
    assert a == b


@pytest.mark.parametrize("r,k,q", [(2, 1, 3), (3, 1, 2)])
def test_alternative_sum_matches_blowup_sum(r, k, q):
    assert betti.alt_fixed_point_series(r, k, q) == betti.blowup_sum_series(r, k, q)


@pytest.mark.parametrize("r,k", [(2, 0), (2, 1), (3, 1)])
def test_virtual_hodge_consistency(r, k):
    assert betti.virtual_hodge_consistency(r, k, 4 if r == 2 else 2)["pass"]


def test_virtual_hodge_lowest_term_sector_one():
    s = betti.virtual_hodge_ratio(2, 1, 1)
    low = min(s.terms)
    assert Q(low, s.den) == Q(1, 4)
    # the lattice points (1, 0) and (0, 1) give two distinct monomials
    assert len(betti.coefficient(s, Q(1, 4)).terms) == 2


def test_betti_rejects_bad_sector():
    with pytest.raises(DomainError):
        betti.poincare_blowup_terms(2, 2, 1)
    with pytest.raises(DomainError):
        betti.poincare_quot(0, 1)


def test_check_all():
    assert betti.check_all(3)["pass"]
