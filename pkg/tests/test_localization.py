from fractions import Fraction as Q
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from instanton.combinatorics import YoungDiagram as Y, enumerate_tuples
from instanton.exactalg import E1, E2, Linear, rational_sample
from instanton.localization import (
    Params, all_weights, ch_reduced, constant_part, euler_class, finst,
    fixed_point_character, rank_one_closed_form_check, shift_law_check, tangent_weights, zinst,
)


def _params(seed, r):
    return Params.evaluated(rational_sample(seed, r))


def test_rank_one_weights_two_boxes():
    p = Params(Q(3), Q(5), (Q(0),))
    got = sorted(tangent_weights((Y((2,)),), 1, 1, p))
    e1, e2 = p.e1, p.e2
    assert got == sorted([2 * e2, e1 - e2, e2, e1])


def test_rank_one_euler_classes():
    p = Params(Q(2), Q(7), (Q(0),))
    e1, e2 = p.e1, p.e2
    assert euler_class((Y((2,)),), p) == 2 * e1 * e2 ** 2 * (e1 - e2)
    assert euler_class((Y((1, 1)),), p) == 2 * e2 * e1 ** 2 * (e2 - e1)
    assert euler_class((Y((1,)),), p) == e1 * e2


@pytest.mark.parametrize("r,n", [(r, n) for r in (1, 2, 3) for n in range(5) if r * n <= 9])
def test_weight_count_is_dimension(r, n):
    p = _params(1, r)
    for Ys in enumerate_tuples(r, n):
        assert len(all_weights(Ys, p)) == 2 * n * r


@settings(max_examples=20)
@given(st.integers(0, 1000), st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda x: x != 0))
def test_euler_class_homogeneity(seed, lam):
    s = rational_sample(seed, 2)
    p = Params.evaluated(s)
    scaled = Params(lam * s.e1, lam * s.e2, tuple(lam * a for a in s.a))
    for Ys in enumerate_tuples(2, 3):
        assert euler_class(Ys, scaled) == lam ** 12 * euler_class(Ys, p)


def test_character_low_degrees():
    p = _params(3, 3)
    for Ys in enumerate_tuples(3, 2):
        ch = fixed_point_character(Ys, p, 2)
        assert ch.coeff(0) == 3
        assert ch.coeff(1) == 0


def test_character_degree_two_single_box():
    a = Q(5, 3)
    p = Params(Q(2), Q(-7), (a,))
    ch = fixed_point_character((Y((1,)),), p, 2)
    assert ch.coeff(2) == a * a / 2 - p.e1 * p.e2


def test_reduced_ch2_counts_boxes():
    # [ch_2]/[C^2] at Y minus its value at the empty tuple is -n
    p = _params(4, 2)
    for n in range(4):
        for Ys in enumerate_tuples(2, n):
            assert ch_reduced(Ys, p, 1)[0] == -n


def test_rank_two_first_coefficient():
    # oracle: Z_1 = 2 / (e1 e2 ((e1 + e2)^2 - 4 a^2)) for a = (a, -a), written by hand
    for seed in range(3):
        s = rational_sample(seed, 2)
        a = s.a[0]
        z = constant_part(zinst(2, Params.evaluated(s), 1))
        assert z.coeff(1) == 2 / (s.e1 * s.e2 * ((s.e1 + s.e2) ** 2 - 4 * a * a))


def test_rank_two_first_coefficient_symbolic():
    a = Q(3, 2)
    z = constant_part(zinst(2, Params.symbolic((a, -a)), 1))
    c = z.coeff(1)
    for e1, e2 in [(Q(1), Q(5)), (Q(-3, 5), Q(7, 4))]:
        assert c(e1, e2) == 2 / (e1 * e2 * ((e1 + e2) ** 2 - 4 * a * a))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_rank_one_closed_form(seed):
    assert rank_one_closed_form_check(_params(seed, 1), 8)["pass"]


def test_rank_one_q_squared_coefficient():
    p = _params(5, 1)
    z = constant_part(zinst(1, p, 2))
    assert z.coeff(2) == 1 / (2 * p.e1 ** 2 * p.e2 ** 2)


def test_rank_one_free_energy_is_q():
    p = _params(6, 1)
    f = constant_part(finst(1, p, 6))
    assert {e: c for e, c in f.terms.items()} == {1: 1}


def test_rank_one_tau_linear_term_vanishes():
    p = _params(7, 1)
    z = zinst(1, p, 0, tau_degree=1)
    assert z.coeff(0).coeff({"tau1": 1}) == 0


@pytest.mark.parametrize("r", [2, 3])
def test_colour_symmetry(r):
    s = rational_sample(11, r)
    base = constant_part(zinst(r, Params.evaluated(s), 3 if r == 2 else 2))
    for perm in permutations(range(r)):
        p = Params(s.e1, s.e2, tuple(s.a[i] for i in perm))
        assert constant_part(zinst(r, p, 3 if r == 2 else 2)) == base


@pytest.mark.parametrize("r,q", [(1, 3), (2, 3), (3, 2)])
def test_epsilon_swap(r, q):
    for seed in range(2):
        s = rational_sample(seed, r)
        z12 = zinst(r, Params(s.e1, s.e2, s.a), q, tau_degree=1)
        z21 = zinst(r, Params(s.e2, s.e1, s.a), q, tau_degree=1)
        assert z12 == z21


def test_transpose_swaps_epsilons_per_fixed_point():
    s = rational_sample(2, 2)
    p, swapped = Params(s.e1, s.e2, s.a), Params(s.e2, s.e1, s.a)
    for Ys in enumerate_tuples(2, 3):
        T = tuple(y.transpose() for y in Ys)
        assert euler_class(Ys, p) == euler_class(T, swapped)


@pytest.mark.parametrize("r", [1, 2])
def test_shift_law(r):
    for seed in range(2):
        assert shift_law_check(r, _params(seed, r), 3, 2)["pass"]


def test_shift_law_symbolic():
    assert shift_law_check(2, Params.symbolic((Q(2), Q(-2))), 2, 2)["pass"]


def test_symbolic_and_evaluated_modes_agree():
    s = rational_sample(9, 2)
    sym = constant_part(zinst(2, Params.symbolic(s.a), 2))
    ev = constant_part(zinst(2, Params.evaluated(s), 2))
    for n in range(3):
        c = sym.coeff(n)
        val = c(s.e1, s.e2) if hasattr(c, "den") else c
        assert val == ev.coeff(n)


def test_symbolic_params_are_linear_forms():
    p = Params.symbolic((Q(1), Q(-1)))
    assert p.symbolic_mode and p.e1 == E1 and p.e2 == E2
    assert isinstance(tangent_weights((Y((1,)), Y()), 1, 2, p)[0], Linear)


def test_free_energy_tau_linear_prefix_counted_once():
    # r = 2, p = 1: tau_1 ([e^a]_2 + [e^-a]_2) = tau_1 a^2
    s = rational_sample(0, 2)
    f = finst(2, Params.evaluated(s), 0, tau_degree=1)
    assert f.coeff(0).coeff({"tau1": 1}) == s.a[0] ** 2
    assert f.coeff(0).constant() == 0
