from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given, strategies as st

from instanton.combinatorics import (
    CorootVector, YoungDiagram, arm_leg, coroot_pairings, diagrams, enumerate_coroots,
    enumerate_tuples, norm, partitions, rho_pairing, tuple_size,
)
from instanton.exactalg import DomainError


def _colour_count(r, nmax):
    # coefficients of prod_d (1 - q^d)^-r, by repeated multiplication with 1/(1-q^d)
    c = [1] + [0] * nmax
    for d in range(1, nmax + 1):
        for _ in range(r):
            for n in range(d, nmax + 1):
                c[n] += c[n - d]
    return c


partition_st = st.lists(st.integers(1, 5), max_size=5).map(
    lambda xs: YoungDiagram(tuple(sorted(xs, reverse=True))))


def test_partition_counts():
    assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_tuple_examples():
    assert len(enumerate_tuples(1, 4)) == 5
    got = set(enumerate_tuples(2, 2))
    Y = YoungDiagram
    assert got == {(Y((2,)), Y()), (Y((1, 1)), Y()), (Y((1,)), Y((1,))),
                   (Y(), Y((2,))), (Y(), Y((1, 1)))}


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_tuple_counts_match_generating_function(r):
    nmax = 10 if r <= 2 else 6
    expected = _colour_count(r, nmax)
    for n in range(nmax + 1):
        tuples = enumerate_tuples(r, n)
        assert len(tuples) == expected[n]
        assert all(len(t) == r and tuple_size(t) == n for t in tuples)


def test_enumeration_is_deterministic():
    assert enumerate_tuples(3, 3) == enumerate_tuples(3, 3)


def test_column_convention():
    Y = YoungDiagram((3, 1))
    assert Y.col(1) == 3 and Y.col(2) == 1 and Y.col(3) == 0
    assert Y.rows == (2, 1, 1)
    assert Y.length == 2
    # box (1, 2): column 1 at height 2
    assert arm_leg(Y, 1, 2) == (1, 1, 0, 0)
    # outside the diagram arm and leg go negative
    assert arm_leg(Y, 2, 2)[0] == -1
    assert arm_leg(YoungDiagram(), 1, 1) == (-1, 0, -1, 0)


def test_invalid_diagrams_rejected():
    with pytest.raises(DomainError):
        YoungDiagram((1, 2))
    with pytest.raises(DomainError):
        YoungDiagram((2, 0))
    with pytest.raises(DomainError):
        arm_leg(YoungDiagram((1,)), 0, 1)


@given(partition_st)
def test_diagram_box_properties(Y):
    boxes = list(Y.boxes())
    assert len(boxes) == Y.size
    assert Y.transpose().size == Y.size
    assert Y.transpose().transpose() == Y
    T = Y.transpose()
    for i, j in boxes:
        a, a2, l, l2 = arm_leg(Y, i, j)
        b, b2, m, m2 = arm_leg(T, j, i)
        assert (a, a2) == (m, m2) and (l, l2) == (b, b2)


@given(st.integers(2, 5).flatmap(
    lambda r: st.lists(st.integers(-4, 4), min_size=r, max_size=r)))
def test_pairing_formulas_agree(entries):
    k = CorootVector.of(entries)
    n, p = coroot_pairings(k)
    assert n >= 0
    assert n == norm(k) and p == rho_pairing(k)


def test_coroot_examples():
    got = {k.entries for k in enumerate_coroots(2, 0, 1)}
    assert got == {(0, 0), (1, -1), (-1, 1)}
    got = {k.entries for k in enumerate_coroots(2, 1, Q(1, 4))}
    assert got == {(1, 0), (0, 1)}
    with pytest.raises(DomainError):
        enumerate_coroots(2, 2, 1)


@pytest.mark.parametrize("r,k,bound", [(2, 0, 3), (2, 1, Q(9, 4)), (3, 0, 2), (3, 1, Q(7, 3)), (3, 2, 2), (4, 2, 2)])
def test_coroots_match_box_scan(r, k, bound):
    scan = set()
    for head in product(range(-12, 13), repeat=r - 1):
        v = CorootVector(tuple(head) + (k - sum(head),), k)
        if norm(v) / 2 <= bound:
            scan.add(v.entries)
    assert {v.entries for v in enumerate_coroots(r, k, bound)} == scan


def test_diagrams_of_size():
    assert all(Y.size == 5 for Y in diagrams(5))


def test_arm_leg_examples():
    assert arm_leg(YoungDiagram((1,)), 1, 1) == (0, 0, 0, 0)
    a, _, l, _ = arm_leg(YoungDiagram((2, 1)), 1, 1)
    assert (a, l) == (1, 1)
    # box (2, 1) outside Y = (2): a = lambda_2 - 1 = -1 and l = lambda'_1 - 2 = 1 - 2 = -1
    a, _, l, _ = arm_leg(YoungDiagram((2,)), 2, 1)
    assert (a, l) == (-1, -1)


def test_pairing_examples():
    assert coroot_pairings(CorootVector.of((1, -1))) == (2, 1)
    assert coroot_pairings(CorootVector.of((1, 0, -1))) == (2, 2)
    assert coroot_pairings(CorootVector.of((0, 0))) == (0, 0)
    assert [k.entries for k in enumerate_coroots(2, 0, 0)] == [(0, 0)]


def test_empty_tuple():
    assert enumerate_tuples(2, 0) == [(YoungDiagram(), YoungDiagram())]
