from fractions import Fraction

import pytest

from orbigraph.catalog import (catalog_samples, cp1cp1_conditions, gen_cp1cp1_quot, gen_ruled,
                               gen_tsw, gen_wpp, gen_wpp_surface, type_from_weights)
from orbigraph.errors import InvalidParams
from orbigraph.graph import validate
from orbigraph.seifert import SeifertInvariant, sphere_degree


def test_all_samples_valid(samples):
    assert len(samples) == 10
    for g in samples.values():
        assert validate(g).ok


def test_tsw_shape():
    g = gen_tsw()
    assert sorted((v.m, v.l, v.moment) for v in g.isolated) == \
        [(2, 1, Fraction(1, 8)), (4, 3, Fraction(0)), (4, 3, Fraction(1, 4))]
    assert [e.k for e in g.edges] == [2, 2]


def test_type_from_weights():
    assert type_from_weights(5, 2, 1) == 3
    assert type_from_weights(1, 4, 7) == 0
    with pytest.raises(InvalidParams):
        type_from_weights(4, 2, 1)


def test_wpp_moments_and_edges():
    g = gen_wpp(2, 3, 5, 3, 2, 1)
    # k0 = aq - cp, k1 = bq - cs, k2 = as - bp
    assert sorted(e.k for e in g.edges) == [5, 7, 13]
    assert g.vertex("F2").moment == 0
    assert g.vertex("F1").moment == Fraction(5 * 5, 3)
    assert g.vertex("F3").moment == -Fraction(2 * 7, 3)


def test_wpp_rejects_non_coprime():
    with pytest.raises(InvalidParams):
        gen_wpp(2, 4, 5, 3, 2, 1)
    with pytest.raises(InvalidParams):
        gen_wpp(1, 1, 1, 1, 1, 1)


def test_cp1cp1_conditions():
    assert cp1cp1_conditions(5, 2, 2, 1) == []
    assert cp1cp1_conditions(4, 2, 1, 1)
    assert cp1cp1_conditions(3, 1, 2, 4)
    with pytest.raises(InvalidParams):
        gen_cp1cp1_quot(5, 2, 1, 2)


def test_cp1cp1_sphere_degrees_zero():
    g = gen_cp1cp1_quot(5, 2, 2, 1, 0, 1, 2)
    assert len(g.edges) == 2  # the two order-1 spheres carry no edge
    assert all(sphere_degree(g, i) == 0 for i in range(len(g.edges)))


def test_ruled_requires_nonzero_degree():
    with pytest.raises(InvalidParams):
        gen_ruled(SeifertInvariant(0, -1, ((2, 1), (2, 1))))
    g = gen_ruled(SeifertInvariant(0, -1, ((2, 1), (3, 1))), 1, 0, 3)
    assert g.vertex("S+").area == 3 - (-1 + Fraction(1, 2) + Fraction(1, 3))


def test_wpp_surface_area_and_position():
    g = gen_wpp_surface(3, 2, 5, 1, 2)
    assert g.vertex("F1").moment == 1 + 2 * Fraction(10, 3)
    with pytest.raises(InvalidParams):
        gen_wpp_surface(3, 2, 5, 0, 0)
