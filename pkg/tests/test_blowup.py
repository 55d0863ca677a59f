from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from instanton.blowup import (
    BlowupFixedPoint, blowup_all_weights, check_blowup_gap, direct_finst, gap_bound,
    recursive_solve, s_factor, s_factor_forms, zhat_inst,
)
from instanton.combinatorics import CorootVector, YoungDiagram, enumerate_coroots, norm
from instanton.exactalg import DomainError, E1, E2, rational_sample
from instanton.localization import Params, constant_part


def _params(seed, r):
    return Params.evaluated(rational_sample(seed, r))


@given(st.integers(-8, 8))
def test_s_factor_counts(k):
    n = len(s_factor_forms(k, Q(2), Q(3), Q(5, 7)))
    if k in (0, -1):
        assert n == 0
    elif k > 0:
        assert n == k * (k + 1) // 2
    else:
        assert n == (k + 1) * k // 2


def test_s_factor_small_cases():
    e1, e2, x = Q(2), Q(3), Q(11)
    assert s_factor(0, e1, e2, x) == 1 and s_factor(-1, e1, e2, x) == 1
    assert s_factor(1, e1, e2, x) == x
    assert s_factor(2, e1, e2, x) == x * (x - e1) * (x - e2)
    assert s_factor(-2, e1, e2, x) == x + e1 + e2
    assert s_factor(-3, e1, e2, x) == (x + e1 + e2) * (x + 2 * e1 + e2) * (x + e1 + 2 * e2)


def test_s_factor_symbolic_matches_numeric():
    f = s_factor(3, E1, E2, Q(5, 2))
    assert f(Q(1, 3), Q(-2)) == s_factor(3, Q(1, 3), Q(-2), Q(5, 2))


def test_empty_diagrams_weight_count():
    # k = (1, -1), empty diagrams: instanton number 1, so 2 r n = 4 weights, all from l
    fp = BlowupFixedPoint(CorootVector.of((1, -1)), (YoungDiagram(), YoungDiagram()),
                          (YoungDiagram(), YoungDiagram()))
    assert fp.instanton_number == 1 and fp.check_condition()
    assert len(blowup_all_weights(fp, _params(0, 2))) == 4


@pytest.mark.parametrize("entries", [(1, 0), (2, -1, 0), (1, 1, -1), (0, 0, 1)])
def test_weight_count_is_dimension(entries):
    kv = CorootVector.of(entries)
    r = kv.rank
    Ys = (YoungDiagram((1,)),) + (YoungDiagram(),) * (r - 1)
    fp = BlowupFixedPoint(kv, Ys, tuple(reversed(Ys)))
    assert fp.check_condition()
    assert len(blowup_all_weights(fp, _params(2, r))) == 2 * r * fp.instanton_number


@given(st.integers(2, 5).flatmap(lambda r: st.lists(st.integers(-4, 4), min_size=r, max_size=r)))
def test_lambda_powers_give_q_power(entries):
    # prod_{alpha, beta} Lambda^{(k_b - k_a)^2 / 2} = q^{(k,k)/2} with Lambda^{2r} = q
    r = len(entries)
    lam_exp = sum(Q((kb - ka) ** 2, 2) for ka in entries for kb in entries)
    assert lam_exp / (2 * r) == norm(CorootVector.of(entries)) / 2


def test_gap_bounds():
    assert gap_bound(2, 0) == 4 and gap_bound(3, 0) == 6
    assert gap_bound(2, 1) == 1 and gap_bound(3, 1) == 2 and gap_bound(3, 2) == 2


@pytest.mark.parametrize("r,k,q", [(2, 0, 2), (2, 1, 2), (3, 1, 1), (3, 2, 1), (3, 0, 1)])
def test_gap_check_small(r, k, q):
    rep = check_blowup_gap(r, k, _params(5, r), q)
    assert rep.passed, rep.as_dict()["violations"][:3]
    assert rep.checked > 0


def test_gap_check_symbolic_eps():
    p = Params.symbolic((Q(3, 2), Q(-3, 2)))
    assert check_blowup_gap(2, 1, p, 1).passed


@pytest.mark.parametrize("r,k", [(2, 0), (2, 1), (3, 1), (3, 2)])
def test_exponents_in_sector(r, k):
    zh = zhat_inst(r, k, _params(1, r), 2 if r == 2 else 1, 1)
    shift = Q(k * (r - k), 2 * r)
    for e in zh.terms:
        assert (Q(e, zh.den) - shift).denominator == 1


@pytest.mark.parametrize("r,k", [(2, 0), (2, 1), (3, 1)])
def test_lattice_truncation_sound(r, k):
    p = _params(3, r)
    q = 2 if r == 2 else 1
    base = zhat_inst(r, k, p, q, 2)
    wider = zhat_inst(r, k, p, q, 2, coroots=enumerate_coroots(r, k, q + 3))
    assert base == wider


@pytest.mark.parametrize("r,k", [(2, 0), (2, 1), (3, 1)])
def test_zhat_epsilon_swap(r, k):
    s = rational_sample(4, r)
    q = 2 if r == 2 else 1
    a = zhat_inst(r, k, Params(s.e1, s.e2, s.a), q, 2)
    b = zhat_inst(r, k, Params(s.e2, s.e1, s.a), q, 2)
    assert a == b
    assert check_blowup_gap(r, k, Params(s.e2, s.e1, s.a), q).passed


def test_invalid_sector():
    with pytest.raises(DomainError):
        zhat_inst(2, 2, _params(0, 2), 1, 1)


@pytest.mark.parametrize("r,q", [(2, 3), (3, 2)])
def test_recursion_matches_localization(r, q):
    p = _params(7, r)
    rec, direct = recursive_solve(r, p, q), direct_finst(r, p, q)
    assert constant_part(rec) == constant_part(direct)
    # tau_2 .. tau_P monomials through degree 2r - 3 as well
    assert rec == direct
    assert r < 3 or any(len(c.terms) > 1 for c in direct.terms.values())


def test_recursion_first_coefficient_rank_two():
    s = rational_sample(8, 2)
    p = Params.evaluated(s)
    f = constant_part(recursive_solve(2, p, 1))
    a = s.a[0]
    # e1 e2 times the hand-derived Z_1
    assert f.coeff(1) == 2 / ((s.e1 + s.e2) ** 2 - 4 * a * a)


@pytest.mark.parametrize("r,k", [(2, 1), (3, 1)])
def test_gap_is_sharp(r, k):
    # the first degree above the vanishing range carries nonzero terms
    bound = gap_bound(r, k)
    zh = zhat_inst(r, k, _params(6, r), 2 if r == 2 else 1, bound)
    top = [c.terms for c in zh.terms.values()
           if any(c.degree_of(e) == bound for e in c.terms)]
    assert top
