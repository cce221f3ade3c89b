"""Generators for the worked examples: ground-truth multigraphs."""

from __future__ import annotations

import math
from fractions import Fraction

from .arith import as_rational
from .errors import InvalidParams
from .graph import Edge, FatVertex, IsolatedVertex, Multigraph, SingularType, validate
from .seifert import SeifertInvariant, euler_class


def type_from_weights(m: int, a1: int, a2: int) -> int:
    """Label ``l`` with ``a1 * l = a2 (mod m)`` for a point whose stabilizer data has ``p = m``."""
    if m == 1:
        return 0
    if math.gcd(a1, m) != 1:
        raise InvalidParams(f"weight {a1} is not invertible modulo {m}")
    return (a2 * pow(a1, -1, m)) % m


def _edges(*triples) -> tuple[Edge, ...]:
    return tuple(Edge(s, n, k) for s, n, k in triples if k >= 2)


def _checked(g: Multigraph) -> Multigraph:
    rep = validate(g)
    if not rep.ok:
        raise InvalidParams("generated graph is invalid: " + "; ".join(rep.errors))
    return g


def _pairwise_coprime(*xs) -> bool:
    return all(math.gcd(a, b) == 1 for i, a in enumerate(xs) for b in xs[i + 1:])


def gen_wpp(p: int, s: int, q: int, a: int, b: int, c: int, alpha=0, beta=1) -> Multigraph:
    """Weighted projective plane CP^2(p, s, q) with the circle acting by weights (a, b, c).

    Fixed points F1 (order p, maximum), F2 (order s, interior) and F3 (order q,
    minimum); isotropy spheres of orders k0 = aq - cp (F3-F1), k1 = bq - cs
    (F3-F2) and k2 = as - bp (F2-F1); ``beta`` is the area of the k0 sphere.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    if min(p, s, q) < 1 or not _pairwise_coprime(p, s, q):
        raise InvalidParams("orders p, s, q must be pairwise coprime positive integers")
    k0, k1, k2 = a * q - c * p, b * q - c * s, a * s - b * p
    if min(k0, k1, k2) < 1 or not _pairwise_coprime(k0, k1, k2):
        raise InvalidParams(f"k0={k0}, k1={k1}, k2={k2} must be positive and pairwise coprime")
    if beta <= 0:
        raise InvalidParams("beta must be positive")
    assert s * k0 == q * k2 + p * k1
    # preferred representatives: a1 is the larger orbi-weight
    l_p = type_from_weights(p, -min(k0, k2), -max(k0, k2))
    l_s = type_from_weights(s, k2, -k1)
    l_q = type_from_weights(q, max(k0, k1), min(k0, k1))
    verts = (
        IsolatedVertex("F1", p, l_p, alpha + Fraction(q * k2, s) * beta),
        IsolatedVertex("F2", s, l_s, alpha),
        IsolatedVertex("F3", q, l_q, alpha - Fraction(p * k1, s) * beta),
    )
    return _checked(Multigraph(verts, _edges(("F3", "F1", k0), ("F3", "F2", k1), ("F2", "F1", k2))))


def gen_wpp_surface(p: int, s: int, q: int, alpha=0, A=1) -> Multigraph:
    """CP^2(p, s, q) with weights fixing the orbi-sphere CP^1(s, q) at the minimum.

    The fixed sphere carries points of orders q and s; the maximum has order p and
    sits at ``alpha + A q s / p``.
    """
    alpha, A = as_rational(alpha), as_rational(A)
    if min(p, s, q) < 1 or not _pairwise_coprime(p, s, q):
        raise InvalidParams("orders p, s, q must be pairwise coprime positive integers")
    if A <= 0:
        raise InvalidParams("area must be positive")
    sing = []
    for order, other in ((q, s), (s, q)):
        if order > 1:
            sing.append(SingularType(order, (other * pow(p, -1, order)) % order))
    l_p = type_from_weights(p, -min(q, s), -max(q, s))
    verts = (
        FatVertex("S", 0, A, tuple(sing), alpha),
        IsolatedVertex("F1", p, l_p, alpha + A * Fraction(q * s, p)),
    )
    return _checked(Multigraph(verts, _edges(("S", "F1", q), ("S", "F1", s))))


def cp1cp1_conditions(c: int, l: int, m: int, n: int) -> list[str]:
    """Violated conditions among those for the four-vertex family with order-c points."""
    bad = []
    if c < 1 or m < 1 or n < 1:
        bad.append("c, m, n must be positive")
        return bad
    if c == 1:
        if l not in (0, 1):
            bad.append("(i): for c = 1 the label must be trivial")
    elif not (1 <= l < c) or math.gcd(l, c) != 1:
        bad.append("(i): need 1 <= l < c with gcd(l, c) = 1")
    d = math.gcd(m, n)
    if c % d:
        bad.append("(ii): gcd(m, n) must divide c")
    elif c > 1 and math.gcd((m * l + n) // d, c) != c // d:
        bad.append("(ii): gcd((ml + n)/gcd(m, n), c) != c/gcd(m, n)")
    return bad


def gen_cp1cp1_quot(c: int, l: int, m: int, n: int, alpha=0, beta=1, gamma=1) -> Multigraph:
    """Quotient of CP^1 x CP^1 by Z_c: four fixed points in a diamond.

    Minimum ``(c, c-l)`` at alpha; ``(c, l)`` at alpha + n*gamma; ``(c, l')`` at
    alpha + m*beta; maximum ``(c, c-l')`` at alpha + m*beta + n*gamma.
    Requires ``m >= n``.
    """
    alpha, beta, gamma = as_rational(alpha), as_rational(beta), as_rational(gamma)
    if c == 1:
        l = 0
    bad = cp1cp1_conditions(c, l, m, n)
    if m < n:
        bad.append("m >= n is required")
    if beta <= 0 or gamma <= 0:
        bad.append("beta and gamma must be positive")
    if bad:
        raise InvalidParams("; ".join(bad))
    if c == 1:
        tl = tlp = tmin = tmax = 0
    else:
        lp = pow(l, -1, c)
        tl, tlp, tmin, tmax = l, lp, c - l, c - lp
    verts = (
        IsolatedVertex("F1", c, tmin, alpha),
        IsolatedVertex("F2", c, tl, alpha + n * gamma),
        IsolatedVertex("F3", c, tlp, alpha + m * beta),
        IsolatedVertex("F4", c, tmax, alpha + m * beta + n * gamma),
    )
    g = Multigraph(verts, _edges(("F1", "F2", n), ("F1", "F3", m), ("F2", "F4", m), ("F3", "F4", n)))
    return _checked(_complete_labels(g))


def _complete_labels(g: Multigraph) -> Multigraph:
    from .graph import normalize_labels

    return g.with_changes(replace_vertices=[normalize_labels(g, v.id) for v in g.isolated])


def gen_ruled(seifert: SeifertInvariant, s=1, alpha=0, A=None) -> Multigraph:
    """Projectivized bundle P(L + C) over an orbi-surface with both ends fixed.

    ``seifert`` is the invariant of the circle bundle of L (the normal bundle of the
    minimal surface); the minimal surface has area ``A`` at ``alpha`` and the
    maximal one area ``A - e*s`` at ``alpha + s``.
    """
    s, alpha = as_rational(s), as_rational(alpha)
    e = euler_class(seifert)
    if e == 0:
        raise InvalidParams("the bundle must have non-zero degree")
    if A is None:
        A = max(Fraction(1), e * s + 1)
    A = as_rational(A)
    if s <= 0 or A <= 0 or A - e * s <= 0:
        raise InvalidParams("need s > 0, A > 0 and A - e*s > 0")
    low = tuple(SingularType(a, pow(b, -1, a)) for a, b in seifert.pairs)
    high = tuple(SingularType(a, a - b) for a, b in seifert.pairs)
    verts = (
        FatVertex("S-", seifert.g, A, low, alpha),
        FatVertex("S+", seifert.g, A - e * s, high, alpha + s),
    )
    return _checked(Multigraph(verts, _edges(*(("S-", "S+", a) for a, _ in seifert.pairs))))


def gen_tsw() -> Multigraph:
    """Three fixed points: two of type 1/4(1,3) joined by two Z_2-spheres and a 1/2(1,1)."""
    verts = (
        IsolatedVertex("south", 4, 3, Fraction(0)),
        IsolatedVertex("north", 4, 3, Fraction(1, 4)),
        IsolatedVertex("mid", 2, 1, Fraction(1, 8)),
    )
    return _checked(Multigraph(verts, _edges(("south", "north", 2), ("south", "north", 2))))


def catalog_samples() -> dict[str, Multigraph]:
    """A fixed set of catalog graphs used by tests and demonstrations."""
    return {
        "tsw": gen_tsw(),
        "cp2": gen_wpp(1, 1, 1, 2, 1, 0),
        "wpp_2_3_5": gen_wpp(2, 3, 5, 3, 2, 1),
        "wpp_surface_3_2_5": gen_wpp_surface(3, 2, 5, 0, 2),
        "wpp_surface_1_1_1": gen_wpp_surface(1, 1, 1),
        "cp1cp1_smooth": gen_cp1cp1_quot(1, 0, 1, 1),
        "cp1cp1_5_2_2_1": gen_cp1cp1_quot(5, 2, 2, 1, 0, 1, 2),
        "cp1cp1_6_1_4_2": gen_cp1cp1_quot(6, 1, 4, 2, 1, 1, 1),
        "ruled_g1": gen_ruled(SeifertInvariant(1, 1, ((3, 1), (2, 1))), 1, 0, 5),
        "ruled_g0_three": gen_ruled(SeifertInvariant(0, -1, ((2, 1), (3, 1), (5, 2))), 2, 0, 3),
    }
