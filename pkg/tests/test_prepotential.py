from fractions import Fraction as Q

import pytest

from instanton import prepotential as pp
from instanton.exactalg import DomainError, UnsupportedError
from instanton.perturb import LogPoly, perturbative_parts

# Instanton coefficients of the rank-2 prepotential, F0 = sum_n f_n a^{2-4n} Lambda^{4n}.
# Literature values 1/2, 5/64, 3/64, carried with the overall sign of the u ~ -a^2 convention.
F0_COEFFS = [0, Q(-1, 2), Q(-5, 64), Q(-3, 64)]
G_COEFFS = [0, Q(-1, 8), Q(-21, 128), Q(-55, 192)]
F1_COEFFS = [0, 0, Q(1, 32), Q(1, 12)]


@pytest.fixture(scope="module")
def rank2():
    return pp.expand_F(2, pp.default_a_samples(2, 2, 0), 3)


def test_expansion_is_regular(rank2):
    assert rank2.regular and not rank2.violations
    assert rank2.expansion_form_ok()


def test_rank2_reconstruction(rank2):
    rec = pp.reconstruct_rank2(rank2)
    assert rec["consistent"] and rec["euler_homogeneity"]
    assert rec["F0"] == F0_COEFFS
    assert rec["G"] == G_COEFFS
    assert rec["F1"] == F1_COEFFS
    assert rec["H"] == [0, 0, 0, 0]


def test_homogeneity_per_sample(rank2):
    for s, a in enumerate(rank2.samples):
        x = a[0]
        for n in range(1, 4):
            assert rank2.F0(s, n) == F0_COEFFS[n] * x ** (2 - 4 * n)
            assert rank2.G(s, n) == G_COEFFS[n] * x ** (-4 * n)


def test_matone_from_reconstruction():
    # Lambda dF0/dLambda = -4u gives u/a^2 = 1 - sum n f_n v^n
    u = [1] + [-n * F0_COEFFS[n] for n in range(1, 4)]
    assert u == [1, Q(1, 2), Q(5, 32), Q(9, 64)]


@pytest.mark.parametrize("r,q", [(2, 3), (3, 2)])
def test_H_vanishes(r, q):
    rep = pp.check_H_vanishes(r, q, seed=0, samples=2)
    assert rep["pass"], rep


def test_rank3_expansion_regular():
    exp = pp.expand_F(3, pp.default_a_samples(3, 1, 4), 2)
    assert exp.regular and exp.expansion_form_ok()
    assert all(exp.H(0, n) == 0 for n in range(3))


def test_nekrasov():
    rep = pp.nekrasov_check(3, samples=3, seed=1)
    assert rep["pass"] and rep["monomials_match"]


def test_matone():
    assert pp.matone_check(2, 3, samples=2, seed=2)["pass"]


def test_genus_one():
    assert pp.genus_one_check(3, samples=2, seed=3)["pass"]


def test_contact_terms():
    a = pp.default_a_samples(2, 1, 5)[0]
    rep = pp.contact_term_checks(a, 3)
    assert rep["pass"], rep
    # dF0/dtau_1 at q^0 is a^2 (sum a^2 / 2 with a = (x, -x))
    assert rep["dtau1_q0"] == rep["expected_dtau1_q0"]


def test_contact_term_table_shape():
    a = pp.default_a_samples(2, 1, 6)[0]
    T = pp.contact_terms(2, a, 2)
    assert (1, 1) in T and (1, 3) in T and (2, 2) in T
    assert T[(1, 3)] == T[(3, 1)]


@pytest.mark.parametrize("r,q", [(2, 3), (3, 2)])
def test_recursion_agreement(r, q):
    assert pp.recursion_agreement(r, q, seed=7)["pass"]


def test_perturbative_parts():
    parts = perturbative_parts()
    # x stands for a, L for log(2ia), P for the branch symbol
    assert parts["F0"] == LogPoly.x(2, -6) + LogPoly.monomial(4, m=2, l=1)
    assert parts["G"] == parts["F1"] == LogPoly.L(Q(1, 6))
    assert parts["lambda_dF0"] == LogPoly.x(2, -4)


def test_bad_inputs():
    with pytest.raises(DomainError):
        pp.expand_F(2, [(Q(1), Q(1))], 1)
    with pytest.raises(DomainError):
        pp.expand_F(2, [(Q(1), Q(-1))], 1, eps_degree=1)
    with pytest.raises(UnsupportedError):
        pp.nekrasov_check(2, r=3)
