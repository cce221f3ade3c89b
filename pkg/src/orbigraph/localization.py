"""Scalar localization identities and fixed-surface normal degrees.

The equivariant integrals of ``1``, of the equivariant symplectic class and of
the equivariant first Chern class over a compact 4-dimensional space vanish in
the relevant degrees.  Expanding the fixed-point contributions by hand turns
each of them into an exact rational identity in the multigraph labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InconsistentSystem, NoFatVertex
from .graph import FatVertex, Multigraph, derive_weights, require_valid


@dataclass(frozen=True)
class SurfaceNormalData:
    """Degree ``beta`` of a fixed surface's normal bundle and the normal weight sign."""

    beta: Fraction
    lam: int


def surface_sign(g: Multigraph, v: FatVertex) -> int:
    """Normal weight of a fixed surface: +1 at the minimum, -1 at the maximum."""
    return 1 if v.moment == g.min_moment() else -1


def orbifold_euler_characteristic(v: FatVertex) -> Fraction:
    """``2 - 2g + sum(1/m_i - 1)`` over the singular points of the surface."""
    chi = Fraction(2 - 2 * v.genus)
    for s in v.singular:
        chi += Fraction(1, s.m) - 1
    return chi


def _isolated_terms(g: Multigraph):
    """Yield ``(vertex, 1/(m l1 l2), (l1 + l2)/(m l1 l2))`` per isolated vertex."""
    for v in g.isolated:
        w1, w2 = derive_weights(g, v.id).weights
        inv = 1 / (v.m * w1 * w2)
        yield v, inv, (w1 + w2) * inv


def _beta(betas: Mapping, vid: str) -> Fraction:
    data = betas[vid]
    return data.beta if isinstance(data, SurfaceNormalData) else Fraction(data)


def check_integral_one(g: Multigraph, betas: Mapping) -> Fraction:
    """Residual of the localization identity for the integral of 1 (0 if consistent)."""
    require_valid(g)
    total = Fraction(0)
    for v in g.fat:
        total -= _beta(betas, v.id)
    for _, inv, _ in _isolated_terms(g):
        total += inv
    return total


def check_integral_omega(g: Multigraph, betas: Mapping) -> Fraction:
    """Residual of the identity for the integral of the equivariant symplectic class."""
    require_valid(g)
    total = Fraction(0)
    for v in g.fat:
        total += surface_sign(g, v) * v.area + _beta(betas, v.id) * v.moment
    for v, inv, _ in _isolated_terms(g):
        total -= v.moment * inv
    return total


def check_integral_c1(g: Multigraph, betas: Mapping) -> Fraction:
    """Residual of the identity for the integral of the equivariant first Chern class."""
    require_valid(g)
    total = Fraction(0)
    for v in g.fat:
        total += orbifold_euler_characteristic(v) / surface_sign(g, v)
    for _, _, c1 in _isolated_terms(g):
        total += c1
    return total


def solve_surface_degrees(g: Multigraph) -> dict:
    """Normal degrees of the fixed surfaces forced by the localization identities."""
    require_valid(g)
    fats = g.fat
    if not fats:
        raise NoFatVertex("graph has no fixed surface")
    s_one = Fraction(0)
    s_h = Fraction(0)
    for v, inv, _ in _isolated_terms(g):
        s_one += inv
        s_h += v.moment * inv
    if len(fats) == 1:
        v = fats[0]
        lam = surface_sign(g, v)
        beta = s_one
        residual = lam * v.area + beta * v.moment - s_h
        if residual != 0:
            raise InconsistentSystem(
                f"degree {beta} from the integral of 1 leaves residual {residual} in the "
                "integral of the symplectic class")
        return {v.id: SurfaceNormalData(beta, lam)}
    lo, hi = sorted(fats, key=lambda v: v.moment)
    # beta_lo + beta_hi = s_one ;  beta_lo H_lo + beta_hi H_hi = s_h - area_lo + area_hi
    rhs = s_h - lo.area + hi.area
    beta_hi = (rhs - s_one * lo.moment) / (hi.moment - lo.moment)
    beta_lo = s_one - beta_hi
    return {lo.id: SurfaceNormalData(beta_lo, 1), hi.id: SurfaceNormalData(beta_hi, -1)}


def residuals(g: Multigraph) -> dict:
    """All three identity residuals, using solved surface degrees when needed."""
    betas = solve_surface_degrees(g) if g.fat else {}
    return {
        "integral_one": check_integral_one(g, betas),
        "integral_omega": check_integral_omega(g, betas),
        "integral_c1": check_integral_c1(g, betas),
    }
