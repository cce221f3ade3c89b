import random
from fractions import Fraction
from math import gcd
from pathlib import Path


from orbigraph.algorithms import (FamilyTag, NoMatch, NotMinimal, classify_minimal, desingularize,
                                  minimalize, random_blow_up, singular_point_count, verify_all)
from orbigraph.arith import hj_expand
from orbigraph.catalog import catalog_samples, gen_cp1cp1_quot, gen_wpp, gen_wpp_surface
from orbigraph.cli import parse
from orbigraph.errors import InvalidParams
from orbigraph.graph import IsolatedVertex, Multigraph, is_isomorphic, validate
from orbigraph.localization import residuals
from orbigraph.rewrite import BlowUpSpec, blow_up

GOLDEN = Path(__file__).parent / "golden"


def test_desingularize_tsw_matches_golden(tsw):
    out, steps = desingularize(tsw)
    assert len(steps) == 7
    assert [s.case + ("*" if s.upside_down else "") for s in steps] == \
        ["I", "II", "II", "III", "II*", "II*", "III*"]
    assert is_isomorphic(out, parse((GOLDEN / "tsw_desingularized.og").read_text()))
    fats = out.fat
    assert len(fats) == 2 and all(f.genus == 0 and f.singular == () for f in fats)
    areas = sorted(f.area for f in fats)
    eps = sorted(s.spec.epsilon for s in steps if s.case == "III")
    assert sorted(2 * e for e in eps) == areas
    assert sorted(e.k for e in out.edges) == [2, 2]
    assert singular_point_count(out) == 0


def test_desingularize_order_history(tsw):
    _, steps = desingularize(tsw)
    orders = []
    g = tsw
    for s in steps:
        g_next = blow_up(g, s.spec)[0]
        orders.append(max((g_next.vertex(v).m for v in s.created
                           if isinstance(g_next.vertex(v), IsolatedVertex)), default=1))
        g = g_next
    # south and north each pass through orders 3 then 2 before becoming smooth
    assert orders[1:3] == [3, 2] and orders[4:6] == [3, 2]


def test_smooth_graph_unchanged():
    g = gen_cp1cp1_quot(1, 0, 1, 1)
    out, steps = desingularize(g)
    assert steps == [] and out == g


def test_single_quotient_point_one_step():
    for p in (2, 3, 5, 7):
        g = gen_wpp_surface(p, 1, 1)
        assert [(v.m, v.l) for v in g.isolated] == [(p, 1)]
        out, steps = desingularize(g)
        assert len(steps) == 1 and steps[0].case == "III" and steps[0].upside_down
        assert singular_point_count(out) == 0


def _single_point_graphs():
    for p in range(2, 16):
        for a in range(1, p):
            if gcd(a, p) != 1:
                continue
            try:
                g = gen_wpp(1, 1, p, a + p, p, 1)
            except InvalidParams:
                continue
            if len([v for v in g.isolated if v.m > 1]) == 1:
                yield g


def test_order_history_follows_continued_fraction():
    """A single 1/p(1,l) point is resolved through the remainders of p / l'."""
    graphs = list(_single_point_graphs())
    assert len(graphs) >= 15
    for g in graphs:
        _check_history(g)


def _check_history(g):
    v = next(v for v in g.isolated if v.m > 1)
    _, steps = desingularize(g)
    g_cur, orders = g, []
    for s in steps:
        g_cur = blow_up(g_cur, s.spec)[0]
        orders.append(sorted((g_cur.vertex(x).m for x in s.created
                              if isinstance(g_cur.vertex(x), IsolatedVertex)), reverse=True))
    expected = list(hj_expand(v.m, pow(v.l, -1, v.m)).remainders)[1:-1]
    got = [o[0] for o in orders if o and o[0] > 1]
    assert got == expected


def test_minimalize_minimal_graph_unchanged(samples):
    for g in samples.values():
        out, steps = minimalize(g)
        assert steps == [] and is_isomorphic(out, g)


def test_minimalize_inverts_blow_up(tsw):
    h, _ = blow_up(tsw, BlowUpSpec("mid", "P1", 1, 1))
    out, steps = minimalize(h)
    assert len(steps) == 1 and is_isomorphic(out, tsw)


def test_minimalize_random_blow_ups_reach_a_family(samples):
    """Minimal models need not be unique, but every search ends in a tabulated family."""
    rng = random.Random(5)
    for g in samples.values():
        h, _ = random_blow_up(g, rng)
        out, steps = minimalize(h)
        assert steps and isinstance(classify_minimal(out), FamilyTag)


def test_classify_catalog(samples):
    expected = {"tsw": "C", "cp2": "C", "wpp_2_3_5": "B", "wpp_surface_3_2_5": "II",
                "wpp_surface_1_1_1": "II", "cp1cp1_smooth": "C", "cp1cp1_5_2_2_1": "A",
                "cp1cp1_6_1_4_2": "A", "ruled_g1": "III", "ruled_g0_three": "III"}
    for name, fam in expected.items():
        tag = classify_minimal(samples[name])
        assert isinstance(tag, FamilyTag), (name, tag)
        assert tag.family == fam
        assert tag.conditions
        assert tag.describe().startswith(f"family {fam}:")


def test_classify_tsw_parameters(tsw):
    tag = classify_minimal(tsw)
    assert tag.parameters["p"] == 2 and tag.parameters["q"] == 2 and tag.parameters["c"] == 2
    assert tag.parameters["a"] == Fraction(1, 8)


def test_classify_not_minimal(tsw):
    h, _ = blow_up(tsw, BlowUpSpec("mid", "P1", 1, 1))
    assert isinstance(classify_minimal(h), NotMinimal)


def test_classify_empty_graph():
    assert isinstance(classify_minimal(Multigraph()), NoMatch)


def test_verify_all(samples):
    for g in samples.values():
        rep = verify_all(g)
        assert rep.ok and rep.lines()[-1] == "result: pass"
    bad = verify_all(Multigraph((IsolatedVertex("a", 1, 0, 0),), ()))
    assert not bad.ok and bad.lines()[-1] == "result: fail"


def test_random_blow_ups_stay_consistent(samples):
    rng = random.Random(1)
    for g in samples.values():
        h = g
        for _ in range(2):
            h, _ = random_blow_up(h, rng)
            assert validate(h).ok
            assert set(residuals(h).values()) == {0}
