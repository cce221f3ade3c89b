from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from orbigraph.errors import InvalidInput, NotCoprime, NotIntegral, NotNegative
from orbigraph.seifert import (SeifertInvariant, blow_down_order, degree_Opq, degree_quotient,
                               euler_class, fat_vertex_seifert, normalized_seifert,
                               seifert_of_Opq, sphere_data, sphere_degree)


def test_euler_class_sum():
    s = SeifertInvariant(0, -1, ((2, 1), (3, 1)))
    assert euler_class(s) == Fraction(-1) + Fraction(1, 2) + Fraction(1, 3)


def test_invalid_pairs():
    with pytest.raises(InvalidInput):
        SeifertInvariant(0, 0, ((4, 2),))
    with pytest.raises(InvalidInput):
        SeifertInvariant(-1, 0, ())


def test_normalization_absorbs_integer_parts():
    s = normalized_seifert(0, 0, [(3, 7), (1, 5)])
    assert s == SeifertInvariant(0, 7, ((3, 1),))


def test_degrees():
    assert degree_Opq(2, 3, 5) == Fraction(5, 6)
    assert degree_quotient(2, 3, 5, 4) == Fraction(5, 24)
    with pytest.raises(NotCoprime):
        degree_Opq(2, 4, 1)


@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20))
def test_seifert_of_Opq_euler_class(p, q, k):
    if gcd(p, q) != 1 or gcd(p, k) != 1 or gcd(q, k) != 1:
        return
    assert euler_class(seifert_of_Opq(p, q, k)) == Fraction(k, p * q)


def test_three_point_example_sphere_degrees(tsw):
    for i in range(2):
        d = sphere_data(tsw, i)
        assert (d.m_minus, d.m_plus, d.c) == (Fraction(1, 2), Fraction(-1, 2), 2)
        assert sphere_degree(tsw, i) == Fraction(1, 2)


def test_blow_down_order():
    assert blow_down_order(Fraction(-1, 6), 3, 2) == 1
    with pytest.raises(NotNegative):
        blow_down_order(Fraction(1, 2), 2, 2)
    with pytest.raises(NotIntegral):
        blow_down_order(Fraction(-1, 7), 2, 3)


def test_fat_vertex_seifert_integral(samples):
    for g in samples.values():
        for v in g.fat:
            s = fat_vertex_seifert(g, v.id)
            assert isinstance(s.b0, int)


def test_ruled_seifert_recovered(samples):
    s = fat_vertex_seifert(samples["ruled_g1"], "S-")
    assert euler_class(s) == euler_class(SeifertInvariant(1, 1, ((3, 1), (2, 1))))
