"""Seifert invariants, degrees of line orbi-bundles and invariant-sphere degrees."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidEdge, InvalidInput, NotCoprime, NotIntegral, NotNegative
from .graph import FatVertex, Multigraph, require_valid, weight_slots


@dataclass(frozen=True)
class SeifertInvariant:
    """``(g; b0, (alpha_1, beta_1), ..., (alpha_n, beta_n))`` with ``1 <= beta_i < alpha_i``."""

    g: int
    b0: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if self.g < 0:
            raise InvalidInput("genus must be non-negative")
        for alpha, beta in self.pairs:
            if alpha < 2 or not (1 <= beta < alpha) or math.gcd(alpha, beta) != 1:
                raise InvalidInput(f"invalid Seifert pair ({alpha}, {beta})")


def normalized_seifert(g: int, b0: int, pairs) -> SeifertInvariant:
    """Reduce pairs to ``1 <= beta < alpha``, absorbing integer parts (and ``alpha = 1``) into b0."""
    kept = []
    for alpha, beta in pairs:
        q, r = divmod(beta, alpha)
        b0 += q
        if alpha > 1 and r:
            kept.append((alpha, r))
        elif alpha > 1 and not r:
            raise InvalidInput(f"pair ({alpha}, {beta}) is not coprime")
    return SeifertInvariant(g, b0, tuple(kept))


def euler_class(s: SeifertInvariant) -> Fraction:
    """Rational Euler class ``b0 + sum beta_i / alpha_i``."""
    return s.b0 + sum((Fraction(b, a) for a, b in s.pairs), Fraction(0))


def degree_Opq(p: int, q: int, k: int) -> Fraction:
    """Degree ``k/(pq)`` of the line orbi-bundle O(k) over CP^1(p, q)."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise NotCoprime(f"orders {p}, {q} must be coprime positive integers")
    return Fraction(k, p * q)


def degree_quotient(p: int, q: int, k: int, m: int) -> Fraction:
    """Degree ``k/(pqm)`` of the quotient of O(k) over CP^1(p, q) by Z_m."""
    if m < 1:
        raise InvalidInput("m must be positive")
    if min(p, q, k) < 1 or math.gcd(p, q) != 1 or math.gcd(p, k) != 1 or math.gcd(q, k) != 1:
        raise NotCoprime(f"({p}, {q}, {k}) must be pairwise coprime positive integers")
    return Fraction(k, p * q * m)


def seifert_of_Opq(p: int, q: int, k: int) -> SeifertInvariant:
    """Seifert invariant of the unit circle bundle of O(k) over CP^1(p, q)."""
    if min(p, q, k) < 1 or math.gcd(p, q) != 1 or math.gcd(p, k) != 1 or math.gcd(q, k) != 1:
        raise NotCoprime(f"({p}, {q}, {k}) must be pairwise coprime positive integers")
    # Bezout n1 p + n2 q = 1 with -q < n1 <= 0 (n1 < 0 whenever q > 1)
    n1 = -((-pow(p, -1, q)) % q) if q > 1 else 0
    n2 = (1 - n1 * p) // q
    beta = n2 * k
    alpha = -n1 * k
    beta_p = beta % p
    alpha_p = alpha % q
    numerator = k - beta_p * q + alpha_p * p
    if numerator % (p * q):
        raise AssertionError("Bezout normalization failed")
    n = numerator // (p * q)
    return normalized_seifert(0, n - 1, [(p, beta_p), (q, q - alpha_p)])


@dataclass(frozen=True)
class SphereBundleData:
    """Transverse orbi-weights at the poles of an invariant sphere, its label and pole orders."""

    m_minus: Fraction
    m_plus: Fraction
    c: int
    orders: tuple[int, int]


SphereRef = Union[int, tuple]


def _pole(g: Multigraph, vid: str, edge_index, k: int, south: bool):
    """Return ``(order, transverse weight)`` of a pole of the sphere."""
    v = g.vertex(vid)
    if isinstance(v, FatVertex):
        if edge_index is None:
            return 1, Fraction(0)
        return k, Fraction(0)
    slots = weight_slots(g, vid)
    w = slots.data.weights
    if edge_index is not None:
        if edge_index not in slots.edges:
            raise InvalidEdge(f"edge {edge_index} does not touch {vid!r}")
        i = slots.edges.index(edge_index)
    else:
        free = [i for i in (0, 1) if slots.edges[i] is None and (w[i] > 0) == south and w[i] != 0]
        if not free:
            raise InvalidEdge(f"vertex {vid!r} has no free direction for a free sphere")
        i = free[0]
    tangent = Fraction(k, v.m) if south else Fraction(-k, v.m)
    if w[i] != tangent:
        raise InvalidEdge(f"tangent weight {w[i]} at {vid!r} differs from {tangent}")
    return v.m, w[1 - i]


def sphere_data(g: Multigraph, e: SphereRef) -> SphereBundleData:
    """Pole data of an edge (index) or of a free sphere given as ``(south_id, north_id)``."""
    require_valid(g)
    if isinstance(e, tuple):
        south, north = e
        k, index = 1, None
        if not g.vertex(south).moment < g.vertex(north).moment:
            raise InvalidEdge("free sphere poles must have increasing moment")
    else:
        if not (0 <= e < len(g.edges)):
            raise InvalidEdge(f"no edge with index {e}")
        edge = g.edges[e]
        south, north, k, index = edge.south, edge.north, edge.k, e
    m_s, w_s = _pole(g, south, index, k, True)
    m_n, w_n = _pole(g, north, index, k, False)
    return SphereBundleData(w_s, w_n, k, (m_s, m_n))


def sphere_degree(g: Multigraph, e: SphereRef) -> Fraction:
    """Self-intersection ``(m_- - m_+)/k`` of an invariant sphere."""
    d = sphere_data(g, e)
    return (d.m_minus - d.m_plus) / d.c


def blow_down_order(d: Fraction, m_s: int, m_n: int) -> int:
    """Order of the singular point left by blowing down a sphere of degree ``d``."""
    d = Fraction(d)
    if d >= 0:
        raise NotNegative(f"degree {d} is not negative")
    order = m_s * m_n * abs(d)
    if order.denominator != 1:
        raise NotIntegral(f"m_s * m_n * |d| = {order} is not an integer")
    return int(order)


def fat_vertex_seifert(g: Multigraph, vid: str) -> SeifertInvariant:
    """Seifert invariant of the circle bundle of a fixed surface's normal bundle."""
    from .localization import solve_surface_degrees

    v = g.vertex(vid)
    if not isinstance(v, FatVertex):
        raise InvalidInput(f"vertex {vid!r} is not a fixed surface")
    beta = solve_surface_degrees(g)[vid].beta
    at_min = v.moment == g.min_moment()
    pairs = [(s.m, s.l_prime if at_min else s.l) for s in v.singular]
    b0 = beta - sum((Fraction(b, a) for a, b in pairs), Fraction(0))
    if b0.denominator != 1:
        raise NotIntegral(f"b0 = {b0} is not an integer")
    return SeifertInvariant(v.genus, int(b0), tuple(sorted(pairs)))


__all__ = [
    "SeifertInvariant", "SphereBundleData", "normalized_seifert", "euler_class", "degree_Opq",
    "degree_quotient", "seifert_of_Opq", "sphere_data", "sphere_degree", "blow_down_order",
    "fat_vertex_seifert",
]
