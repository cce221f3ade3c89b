import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbigraph.algorithms import enumerate_specs, exceptional_locus, random_blow_up
from orbigraph.catalog import catalog_samples, gen_wpp_surface
from orbigraph.errors import InadmissibleSize, InvalidSpec, NoInverse, OrbigraphError
from orbigraph.graph import IsolatedVertex, is_isomorphic, validate, weight_slots
from orbigraph.localization import residuals, solve_surface_degrees
from orbigraph.rewrite import (BlowUpSpec, Unbounded, blow_down, blow_up, classify_case,
                               max_admissible, replay)
from orbigraph.seifert import sphere_degree


def _point(g, vid):
    v = g.vertex(vid)
    return (v.m, v.l) if isinstance(v, IsolatedVertex) else None


def test_classify_case_examples(tsw):
    assert classify_case(tsw, BlowUpSpec("south", "P1", 3, 1)) == "II"
    assert classify_case(tsw, BlowUpSpec("south", "P2", 1, 1)) == "III"
    assert classify_case(tsw, BlowUpSpec("mid", "P1", 1, 1)) == "I"
    assert classify_case(tsw, BlowUpSpec("north", "P1", 3, 1)) == "II*"


def test_invalid_spec_rejected(tsw):
    with pytest.raises(InvalidSpec):
        BlowUpSpec("south", "P3", 1, 1)
    with pytest.raises(OrbigraphError):
        blow_up(tsw, BlowUpSpec("south", "P1", 2, 1))  # 2*3 - 1 not divisible by 4


def test_resolution_step_order_four_to_three(tsw):
    g1, rec = blow_up(tsw, BlowUpSpec("south", "P1", 3, 1, Fraction(1, 16)))
    assert rec.case == "II"
    new = [_point(g1, v) for v in rec.created]
    assert sorted(new) == [(1, 0), (3, 2)]
    assert weight_slots(g1, rec.created[0]).data.p == 3
    assert residuals(g1) == {"integral_one": 0, "integral_omega": 0, "integral_c1": 0}


def test_resolution_step_order_three_to_two(tsw):
    g1, rec = blow_up(tsw, BlowUpSpec("south", "P1", 3, 1, Fraction(1, 16)))
    x = next(v for v in rec.created if g1.vertex(v).m == 3)
    g2, rec2 = blow_up(g1, BlowUpSpec(x, "P1", 1, 2, Fraction(1, 64)))
    assert rec2.case == "II"
    assert sorted(_point(g2, v) for v in rec2.created) == [(1, 0), (2, 1)]


def test_resolution_step_fat_vertex(tsw):
    g1, rec = blow_up(tsw, BlowUpSpec("south", "P1", 3, 1, Fraction(1, 16)))
    x = next(v for v in rec.created if g1.vertex(v).m == 3)
    g2, rec2 = blow_up(g1, BlowUpSpec(x, "P1", 1, 2, Fraction(1, 64)))
    y = next(v for v in rec2.created if g2.vertex(v).m == 2)
    eps = Fraction(1, 256)
    g3, rec3 = blow_up(g2, BlowUpSpec(y, "P1", 1, 1, eps))
    assert rec3.case == "III"
    fat = g3.vertex(rec3.created[0])
    assert fat.genus == 0 and fat.area == 2 * eps and fat.singular == ()
    assert solve_surface_degrees(g3)[fat.id].beta == -2


def test_max_admissible_examples(tsw):
    assert max_admissible(tsw, BlowUpSpec("south", "P1", 3, 1)) == Fraction(1, 8)
    assert max_admissible(tsw, BlowUpSpec("mid", "P1", 1, 1)) == Fraction(1, 8)
    g = gen_wpp_surface(1, 1, 1)
    assert max_admissible(g, BlowUpSpec("S", "P1", 1, 1)) is not Unbounded


def test_max_admissible_is_strict_supremum(samples):
    """Sizes below the bound are accepted; the bound itself and beyond are refused."""
    checked = 0
    for g in samples.values():
        for spec in enumerate_specs(g, 3):
            try:
                top = max_admissible(g, spec)
            except OrbigraphError:
                continue
            if top is Unbounded:
                continue
            ok_spec = BlowUpSpec(spec.vertex, spec.variant, spec.b1, spec.b2, top * Fraction(99, 100),
                                 spec.point, spec.edge, spec.label, spec.swap)
            h, _ = blow_up(g, ok_spec)
            assert validate(h).ok
            for eps in (top, top * Fraction(101, 100)):
                with pytest.raises(InadmissibleSize):
                    blow_up(g, BlowUpSpec(spec.vertex, spec.variant, spec.b1, spec.b2, eps,
                                          spec.point, spec.edge, spec.label, spec.swap))
            checked += 1
    assert checked > 50


def test_unbounded_marker_is_singleton():
    from orbigraph.rewrite import _Unbounded

    assert _Unbounded() is Unbounded and repr(Unbounded) == "Unbounded"


def test_case_four_degree_change():
    g = gen_wpp_surface(3, 2, 5, 0, 2)
    beta = solve_surface_degrees(g)["S"].beta
    for k in (1, 2, 3):
        h, rec = blow_up(g, BlowUpSpec("S", "P1", k, 1, Fraction(1, 10)))
        assert rec.case == "IV"
        assert solve_surface_degrees(h)["S"].beta == beta - k
        assert h.vertex("S").area == 2 - Fraction(1, 10)
        assert sphere_degree(h, exceptional_locus(h, rec)) == Fraction(-1, k)


def test_two_label_vertex_blow_up():
    g = catalog_samples()["wpp_2_3_5"]
    labelled = [v for v in g.isolated if v.l2 is not None]
    for v in labelled:
        for l in (v.l, v.l2):
            spec = BlowUpSpec(v.id, "P1", pow(l, -1, v.m), 1, label=l)
            h, _ = blow_up(g, spec)
            assert validate(h).ok


def test_replay_reproduces(tsw):
    rng = random.Random(3)
    g, recs = tsw, []
    for _ in range(3):
        g, rec = random_blow_up(g, rng)
        recs.append(rec)
    assert replay(tsw, recs) == g


def test_blow_down_non_exceptional_fails(tsw):
    with pytest.raises(OrbigraphError):
        blow_down(tsw, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(catalog_samples())), st.integers(0, 10**6))
def test_roundtrip_property(name, seed):
    g = catalog_samples()[name]
    h, rec = random_blow_up(g, random.Random(seed))
    assert residuals(h) == {"integral_one": 0, "integral_omega": 0, "integral_c1": 0}
    back, down = blow_down(h, exceptional_locus(h, rec))
    assert is_isomorphic(back, g)
    assert down.case == rec.case
