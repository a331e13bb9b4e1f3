from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from oplattice.detector import (
    Classical,
    NotClassical,
    classify,
    invert_quadratic,
    pearson_solve_from_moments,
)
from oplattice.errors import InsufficientMoments, InversionUndefined, TableTooShort
from oplattice.lattice import QLinear, Quadratic
from oplattice.para_krawtchouk import ParaKrawtchoukParams, pk_functional, pk_table
from oplattice.pearson import PearsonData, recurrence_table, regularity
from oplattice.recurrence import RecurrenceTable, moments_from_recurrence

from conftest import qlinear_lattices, quadratic_lattices, small_fractions

HERMITE = PearsonData(0, 0, Fraction(-1, 2), 1, 0)
HERMITE_TABLE = RecurrenceTable([0] * 14, [Fraction(n + 1, 2) for n in range(14)])
PK5 = ParaKrawtchoukParams(5, Fraction(1, 2))
LINEAR, THREE_S = Quadratic(0, 2, 1), Quadratic(0, 3, 0)


@st.composite
def normalized_pd(draw):
    return PearsonData(*(draw(small_fractions(20)) for _ in range(3)), 1, draw(small_fractions(20)))


def test_invert_quadratic_on_finite_family():
    t = pk_table(PK5)
    pd = invert_quadratic(t.B[0], t.B[1], t.C[0], t.C[1], LINEAR)
    assert pd.as_tuple() == (Fraction(-1, 4), Fraction(9, 8), Fraction(-9, 4), 1, Fraction(-9, 4))


def test_invert_quadratic_hermite():
    pd = invert_quadratic(0, 0, Fraction(1, 2), 1, Quadratic(0, 0, 1))
    assert pd == HERMITE


def test_invert_quadratic_needs_nonzero_c2():
    with pytest.raises(InversionUndefined):
        invert_quadratic(0, 0, 1, 0, Quadratic(0, 0, 1))


def test_singular_inversion_is_rejected_downstream():
    # on the constant lattice a = -1/3 + 4 C1 / (6 C2), so C2 = -C1 forces d_1 = a + 1 = 0
    lat = Quadratic(0, 0, 1)
    pd = invert_quadratic(1, 1, 1, -1, lat)
    assert pd.a == -1
    assert not regularity(pd, lat, 3).regular
    t = RecurrenceTable([1, 1, 1], [1, -1, 1])
    assert not isinstance(classify(t, lat, 2), Classical)


def test_moment_solve_hermite():
    basis = pearson_solve_from_moments(oracles.gaussian_moments(12), Quadratic(0, 0, 1))
    assert len(basis) == 1
    assert basis[0].normalized() == HERMITE


def test_moment_solve_non_classical_is_empty():
    moments = pk_functional(PK5).moments(9)
    assert pearson_solve_from_moments(moments, THREE_S) == []
    assert len(pearson_solve_from_moments(moments, LINEAR)) == 1


def test_moment_solve_needs_moments():
    with pytest.raises(InsufficientMoments):
        pearson_solve_from_moments([1, 0, 1], LINEAR)


@given(st.lists(small_fractions(9), min_size=8, max_size=8), quadratic_lattices())
def test_moment_solve_never_returns_zero(m, lat):
    m[0] = Fraction(1)
    for pd in pearson_solve_from_moments(m, lat):
        assert any(pd.as_tuple())


def test_classify_examples():
    t = pk_table(PK5)
    v = classify(t, LINEAR, verify_to=4)
    assert isinstance(v, Classical)
    assert v.pd.as_tuple() == (Fraction(-1, 4), Fraction(9, 8), Fraction(-9, 4), 1, Fraction(-9, 4))
    assert isinstance(classify(t, THREE_S, verify_to=4), NotClassical)


def test_classify_hermite():
    v = classify(HERMITE_TABLE, Quadratic(0, 0, 1))
    assert isinstance(v, Classical) and v.pd == HERMITE and v.verified_to == 12


def test_classify_refuses_short_tables():
    with pytest.raises(TableTooShort):
        classify(pk_table(PK5), LINEAR, verify_to=12)
    with pytest.raises(ValueError):
        classify(HERMITE_TABLE, LINEAR, verify_to=1)


@settings(max_examples=25)
@given(quadratic_lattices(), normalized_pd())
def test_quadratic_round_trip(lat, pd):
    assume(regularity(pd, lat, 13).regular)
    v = classify(recurrence_table(pd, lat, 13), lat)
    assert isinstance(v, Classical) and v.pd == pd


@settings(max_examples=15)
@given(qlinear_lattices(), normalized_pd())
def test_qlinear_round_trip(lat, pd):
    assume(regularity(pd, lat, 13).regular)
    v = classify(recurrence_table(pd, lat, 13), lat)
    assert isinstance(v, Classical) and v.pd == pd


@settings(max_examples=25)
@given(quadratic_lattices(), normalized_pd(), st.integers(3, 12))
def test_perturbing_one_c_gives_witness(lat, pd, k):
    assume(regularity(pd, lat, 13).regular)
    t = recurrence_table(pd, lat, 13)
    C = list(t.C)
    C[k - 1] += 1
    assume(C[k - 1] != 0)
    v = classify(RecurrenceTable(t.B, C), lat)
    assert v == NotClassical(k - 1, "C")


def test_perturbed_q_table_is_not_classical():
    lat = QLinear(2, 1, 1, 0)
    pd = PearsonData(Fraction(1, 3), Fraction(1, 2), 1, 1, Fraction(-1, 5))
    t = recurrence_table(pd, lat, 13)
    for k in (3, 6, 11):
        C = list(t.C)
        C[k - 1] += 1
        v = classify(RecurrenceTable(t.B, C), lat)
        assert isinstance(v, NotClassical) and v.witness_n in (k - 1, k)


@pytest.mark.parametrize("N, gamma", [(5, Fraction(1, 2)), (7, Fraction(3, 4)), (9, Fraction(1, 3))])
def test_constant_shift_on_linear_lattice(N, gamma):
    t = pk_table(ParaKrawtchoukParams(N, gamma))
    v1 = classify(t, Quadratic(0, 2, 1), verify_to=t.max_index)
    v5 = classify(t, Quadratic(0, 2, 5), verify_to=t.max_index)
    assert type(v1) is type(v5) is Classical
    assert (v1.pd.a, v1.pd.d) == (v5.pd.a, v5.pd.d)


def test_moment_solve_agrees_with_inversion_on_hermite_table():
    m = moments_from_recurrence(HERMITE_TABLE, 11)
    basis = pearson_solve_from_moments(m, Quadratic(0, 0, 1))
    assert [b.normalized() for b in basis] == [invert_quadratic(0, 0, Fraction(1, 2), 1, Quadratic(0, 0, 1))]
