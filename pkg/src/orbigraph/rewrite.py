"""Equivariant weighted blow-ups and blow-downs as local multigraph rewrites.

Two families of weighted blow-ups are supported.  ``P1`` blows up a point of
type ``1/m(1,l)`` with weights ``b1/m, b2/m`` (``b1 l - b2 = b m``); ``P2``
uses weights ``b1/p, b2/p`` (``b1 l - b2 = b p``, ``gcd(b, m/p) = 1``) and only
exists when ``p < m``.  Each family has four local shapes:

* ``I``   the centre is a non-extremal isolated fixed point;
* ``II``  the centre is an isolated extremum and the exceptional sphere is an edge;
* ``III`` the centre is an isolated extremum and the exceptional divisor is fixed;
* ``IV``  the centre is a point of a fixed surface.

Moment labels, areas and degrees are exact and affine in the size ``epsilon``.
Blow-downs are found by enumerating every blow-up that could have produced the
given locus and keeping those whose forward rewrite reproduces the graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from .arith import as_rational
from .errors import (Ambiguous, InadmissibleSize, InvalidEdge, InvalidGraph, InvalidInput,
                     InvalidSpec, NoInverse, NotBlowDownable, NotIntegral, NotNegative,
                     OrbigraphError)
from .graph import (Edge, FatVertex, IsolatedVertex, Multigraph, SingularType,
                    _canonical_unchecked, normalize_labels, require_valid, same_graph,
                    type_condition_holds, validate, weight_slots)


class _Unbounded:
    """Marker for a blow-up whose size is not limited by any label."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"


Unbounded = _Unbounded()


@dataclass(frozen=True)
class BlowUpSpec:
    """Target and parameters of a weighted blow-up.

    ``vertex``   id of an isolated vertex or a fixed surface;
    ``variant``  ``"P1"`` or ``"P2"``;
    ``b1, b2``   coprime positive integers;
    ``epsilon``  size (``None``: half of the admissible maximum);
    ``point``    for a fixed surface: the singular type blown up (``None``: a regular point);
    ``edge``     for a fixed surface: index of the edge leaving that point (default: first match);
    ``label``    for a vertex with two labels: which one plays the role of ``l``;
    ``swap``     for equal orbi-weights: exchange which edge goes with ``b1``.
    """

    vertex: str
    variant: str
    b1: int
    b2: int
    epsilon: Optional[Fraction] = None
    point: Optional[SingularType] = None
    edge: Optional[int] = None
    label: Optional[int] = None
    swap: bool = False

    def __post_init__(self):
        v = self.variant.upper()
        if v not in ("P1", "P2"):
            raise InvalidSpec(f"variant must be P1 or P2, got {self.variant!r}")
        object.__setattr__(self, "variant", v)
        if self.epsilon is not None:
            object.__setattr__(self, "epsilon", as_rational(self.epsilon))
        if self.point is not None and not isinstance(self.point, SingularType):
            object.__setattr__(self, "point", SingularType(*self.point))


@dataclass(frozen=True)
class RewriteRecord:
    """One rewrite step: the forward spec, its case and the ids it touched."""

    spec: BlowUpSpec
    case: str
    upside_down: bool
    created: tuple[str, ...]
    removed: tuple[str, ...]
    direction: str = "up"

    def describe(self) -> str:
        s = self.spec
        parts = [f"{self.direction}", f"case={self.case}{'*' if self.upside_down else ''}",
                 f"vertex={s.vertex}", f"variant={s.variant}", f"b1={s.b1}", f"b2={s.b2}",
                 f"epsilon={s.epsilon}"]
        if s.point is not None:
            parts.append(f"point=({s.point.m},{s.point.l})")
        if s.edge is not None:
            parts.append(f"edge={s.edge}")
        if s.label is not None:
            parts.append(f"label={s.label}")
        if s.swap:
            parts.append("swap")
        parts.append("created=" + ",".join(self.created))
        parts.append("removed=" + ",".join(self.removed))
        return " ".join(parts)


# ---------------------------------------------------------------------------
# local data at the centre


@dataclass
class _Site:
    kind: str  # "point" or "surface"
    m: int
    l: int
    p: int
    a1: int
    a2: int
    slots: tuple  # edge index (or None) carrying weight a1, a2
    position: str  # "min", "max", "interior"
    vertex: object


def _site(g: Multigraph, spec: BlowUpSpec) -> _Site:
    if not g.has_vertex(spec.vertex):
        raise InvalidSpec(f"unknown vertex {spec.vertex!r}")
    v = g.vertex(spec.vertex)
    at_min, at_max = g.is_min(v.id), g.is_max(v.id)
    position = "min" if at_min else "max" if at_max else "interior"
    if isinstance(v, IsolatedVertex):
        if spec.point is not None or spec.edge is not None:
            raise InvalidSpec("point/edge selectors apply to fixed surfaces only")
        ws = weight_slots(g, v.id)
        labels = [t.l for t in v.types]
        l = labels[0] if spec.label is None else spec.label
        if l not in labels:
            raise InvalidSpec(f"vertex {v.id} has no label {l}")
        slots = ws.edges
        if spec.swap:
            if ws.data.a1 != ws.data.a2:
                raise InvalidSpec("swap requires equal orbi-weights")
            slots = (slots[1], slots[0])
        return _Site("point", v.m, l, ws.data.p, ws.data.a1, ws.data.a2, slots, position, v)
    if spec.label is not None or spec.swap:
        raise InvalidSpec("label/swap selectors apply to isolated vertices only")
    inc = g.incident(v.id)
    if spec.point is None:
        m, l, e = 1, 0, None
        if spec.edge is not None:
            raise InvalidSpec("a regular point carries no edge")
    else:
        if spec.point not in v.singular:
            raise InvalidSpec(f"surface {v.id} has no singular point {spec.point}")
        m, l = spec.point.m, spec.point.l
        matching = [i for i in inc if g.edges[i].k == m]
        if spec.edge is None:
            e = matching[0]
        elif spec.edge in matching:
            e = spec.edge
        else:
            raise InvalidSpec(f"edge {spec.edge} does not leave a point of order {m} on {v.id}")
    if at_min:
        return _Site("surface", m, l, 1, 1, 0, (e, None), "min", v)
    return _Site("surface", m, l, 1, 0, -1, (None, e), "max", v)


@dataclass
class _Plan:
    case: str
    n1: int
    n2: int
    s1: int
    s2: int
    sigma: int  # multiplier of a_i * eps / b_i in the new moments
    connect: int  # label of the edge between the two new points


def _plan(site: _Site, spec: BlowUpSpec) -> _Plan:
    b1, b2 = spec.b1, spec.b2
    if b1 < 1 or b2 < 1 or math.gcd(b1, b2) != 1:
        raise InvalidSpec(f"need coprime positive b1, b2, got ({b1}, {b2})")
    m, l, p, a1, a2 = site.m, site.l, site.p, site.a1, site.a2
    k = m // p
    if m == 1:
        lp, gamma = 0, 1
    else:
        lp = pow(l, -1, m)
        gamma = (1 - l * lp) // m
    if spec.variant == "P1":
        if (b1 * l - b2) % m:
            raise InvalidSpec(f"P1 needs b1*l - b2 = 0 mod m ({b1}*{l} - {b2} mod {m})")
        b = (b1 * l - b2) // m
        n1, n2, bound, sigma = b1, b2, m, k
        t = b * lp + b1 * gamma
        num = abs(a1 * b2 - a2 * b1)
        if num % p:
            raise InvalidSpec("connecting label is not an integer")
        connect = num // p
    else:
        if p >= m:
            raise InvalidSpec("P2 needs p < m")
        if (b1 * l - b2) % p:
            raise InvalidSpec(f"P2 needs b1*l - b2 = 0 mod p ({b1}*{l} - {b2} mod {p})")
        b = (b1 * l - b2) // p
        if math.gcd(b, k) != 1:
            raise InvalidSpec(f"P2 needs gcd(b, m/p) = 1, got b={b}, m/p={k}")
        n1, n2, bound, sigma = b1 * k, b2 * k, p, 1
        t = b * lp + b1 * k * gamma
        num = abs(a1 * b2 - a2 * b1) * k
        if num % p:
            raise InvalidSpec("connecting label is not an integer")
        connect = num // p
    if site.kind == "surface" and m == 1:
        if site.position == "min" and b2 != 1 or site.position == "max" and b1 != 1:
            raise InvalidSpec("a regular point on a fixed surface only admits weights (k, 1) "
                              "at the minimum and (1, k) at the maximum")
    s1 = _label(b, n1, a1 * bound >= a2 * b1 - a1 * b2, False)
    s2 = _label(t, n2, a2 * bound >= a1 * b2 - a2 * b1, True)
    if site.kind == "surface":
        case = "IV"
    elif site.position == "interior":
        case = "I"
    elif a1 * b2 == a2 * b1:
        case = "III"
        if b1 != abs(a1) or b2 != abs(a2):
            raise InvalidSpec("fixed exceptional divisor needs b_i = |a_i|")
    else:
        case = "II"
    return _Plan(case, n1, n2, s1, s2, sigma, connect)


def _label(x: int, n: int, direct: bool, negate: bool) -> int:
    """Type label of a new point of order n from the residue rules."""
    if n == 1:
        return 0
    if direct:
        s = (-x if negate else x) % n
    else:
        if math.gcd(x, n) != 1:
            raise InvalidSpec(f"{x} is not invertible modulo {n}")
        s = (-pow(x, -1, n) if negate else pow(x, -1, n)) % n
    if s == 0 or math.gcd(s, n) != 1:
        raise InvalidSpec(f"new point of order {n} gets invalid label {s}")
    return s


def classify_case(g: Multigraph, spec: BlowUpSpec) -> str:
    """Case tag (I-IV, ``*`` marks the upside-down variants at a maximum)."""
    site = _site(g, spec)
    plan = _plan(site, spec)
    return plan.case + ("*" if site.position == "max" else "")


# ---------------------------------------------------------------------------
# forward rewrite


def _fresh_ids(g: Multigraph, n: int) -> list[str]:
    out, taken = [], set(v.id for v in g.vertices)
    i = len(g.vertices)
    while len(out) < n:
        cand = f"x{i}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        i += 1
    return out


def _reattach(edges: list, index, old: str, new: str):
    e = edges[index]
    edges[index] = Edge(new if e.south == old else e.south, new if e.north == old else e.north, e.k)


def _point(vid, n, s, moment):
    return IsolatedVertex(vid, n, s if n > 1 else 0, moment)


def _rewrite(g: Multigraph, site: _Site, plan: _Plan, spec: BlowUpSpec, eps: Fraction):
    """Apply the local rewrite with size ``eps`` (no admissibility or validity checks)."""
    v = site.vertex
    alpha = v.moment
    b1, b2 = spec.b1, spec.b2
    edges = list(g.edges)
    if plan.case in ("I", "II"):
        id1, id2 = _fresh_ids(g, 2)
        x1 = _point(id1, plan.n1, plan.s1, alpha + plan.sigma * Fraction(site.a1, b1) * eps)
        x2 = _point(id2, plan.n2, plan.s2, alpha + plan.sigma * Fraction(site.a2, b2) * eps)
        for idx, new in zip(site.slots, (id1, id2)):
            if idx is not None:
                _reattach(edges, idx, v.id, new)
        if plan.connect >= 2:
            lo, hi = (id1, id2) if x1.moment < x2.moment else (id2, id1)
            edges.append(Edge(lo, hi, plan.connect))
        out = g.with_changes(remove=[v.id], add=[x1, x2], edges=edges)
        return out, (id1, id2), (v.id,)
    if plan.case == "III":
        (fid,) = _fresh_ids(g, 1)
        sign = 1 if site.position == "min" else -1
        area = Fraction(site.p * site.p, site.a1 * site.a2 * site.m) * eps
        sing = [SingularType(n, s) for n, s in ((plan.n1, plan.s1), (plan.n2, plan.s2)) if n > 1]
        fat = FatVertex(fid, 0, area, tuple(sing), alpha + sign * eps)
        for idx in site.slots:
            if idx is not None:
                _reattach(edges, idx, v.id, fid)
        out = g.with_changes(remove=[v.id], add=[fat], edges=edges)
        return out, (fid,), (v.id,)
    # case IV: centre on a fixed surface
    at_min = site.position == "min"
    i_first = spec.b2 * abs(site.a1) > spec.b1 * abs(site.a2) and site.a1 != 0
    if i_first:
        n_i, s_i, a_i, b_i, n_j, s_j, b_j = plan.n1, plan.s1, site.a1, b1, plan.n2, plan.s2, b2
    else:
        n_i, s_i, a_i, b_i, n_j, s_j, b_j = plan.n2, plan.s2, site.a2, b2, plan.n1, plan.s1, b1
    (yid,) = _fresh_ids(g, 1)
    y = _point(yid, n_i, s_i, alpha + plan.sigma * Fraction(a_i, b_i) * eps)
    normal_edge = site.slots[0] if at_min else site.slots[1]
    if normal_edge is not None:
        _reattach(edges, normal_edge, v.id, yid)
    if n_j >= 2:
        edges.append(Edge(v.id, yid, n_j) if at_min else Edge(yid, v.id, n_j))
    sing = list(v.singular)
    if site.m > 1:
        sing.remove(SingularType(site.m, site.l))
    if n_j > 1:
        sing.append(SingularType(n_j, s_j))
    decrement = eps / b_j if spec.variant == "P1" else eps / (site.m * b_j)
    fat = replace(v, area=v.area - decrement, singular=tuple(sing))
    out = g.with_changes(add=[y], replace_vertices=[fat], edges=edges)
    return out, (yid,), ()


def _affine_constraints(g0: Multigraph, g1: Multigraph):
    """Pairs ``(c0, c1)`` that must satisfy ``c0 + c1*eps > 0``."""
    cons = []
    for e0, e1 in zip(g0.edges, g1.edges):
        c0 = g0.vertex(e0.north).moment - g0.vertex(e0.south).moment
        c1 = g1.vertex(e1.north).moment - g1.vertex(e1.south).moment - c0
        cons.append((c0, c1))
    for v0 in g0.fat:
        v1 = g1.vertex(v0.id)
        cons.append((v0.area, v1.area - v0.area))
    slopes = {v.id: (v.moment, g1.vertex(v.id).moment - v.moment) for v in g0.vertices}
    lo = min(slopes, key=lambda i: slopes[i])
    hi = max(slopes, key=lambda i: slopes[i])
    for vid, (c0, c1) in slopes.items():
        if vid != lo:
            cons.append((c0 - slopes[lo][0], c1 - slopes[lo][1]))
        if vid != hi:
            cons.append((slopes[hi][0] - c0, slopes[hi][1] - c1))
    return cons


def _max_size(g: Multigraph, site: _Site, plan: _Plan, spec: BlowUpSpec):
    g0, _, _ = _rewrite(g, site, plan, spec, Fraction(0))
    g1, _, _ = _rewrite(g, site, plan, spec, Fraction(1))
    bound = None
    for c0, c1 in _affine_constraints(g0, g1):
        if c0 > 0:
            if c1 < 0:
                ub = c0 / -c1
                bound = ub if bound is None else min(bound, ub)
        elif c0 == 0 and c1 > 0:
            continue
        else:
            raise InvalidSpec("no positive size makes this blow-up admissible")
    return Unbounded if bound is None else bound


def max_admissible(g: Multigraph, spec: BlowUpSpec):
    """Supremum of admissible sizes (``Unbounded`` if no label limits it)."""
    require_valid(g)
    site = _site(g, spec)
    return _max_size(g, site, _plan(site, spec), spec)


def _blow_up_checked_input(g: Multigraph, spec: BlowUpSpec):
    site = _site(g, spec)
    plan = _plan(site, spec)
    bound = _max_size(g, site, plan, spec)
    eps = spec.epsilon
    if eps is None:
        if bound is Unbounded:
            raise InvalidSpec("size is unbounded; an explicit epsilon is required")
        eps = bound / 2
    if eps <= 0 or (bound is not Unbounded and eps >= bound):
        raise InadmissibleSize(f"epsilon {eps} is not in (0, {bound})")
    out, created, removed = _rewrite(g, site, plan, spec, eps)
    fixed = [normalize_labels(out, vid) for vid in created if isinstance(out.vertex(vid), IsolatedVertex)]
    if fixed:
        out = out.with_changes(replace_vertices=fixed)
    rep = validate(out)
    if not rep.ok:
        raise InvalidSpec("blow-up produces an invalid graph: " + "; ".join(rep.errors))
    record = RewriteRecord(replace(spec, epsilon=eps), plan.case, site.position == "max",
                           tuple(created), tuple(removed))
    return out, record


def blow_up(g: Multigraph, spec: BlowUpSpec):
    """Weighted blow-up; returns the new graph and its rewrite record."""
    require_valid(g)
    return _blow_up_checked_input(g, spec)


def replay(g: Multigraph, records) -> Multigraph:
    """Re-apply a sequence of recorded steps (blow-ups and blow-downs)."""
    for rec in records:
        if rec.direction == "up":
            g, _ = blow_up(g, rec.spec)
        else:
            g, _ = blow_down(g, rec.target)
    return g


# ---------------------------------------------------------------------------
# blow-down by inverse search


@dataclass(frozen=True)
class BlowDownRecord(RewriteRecord):
    """Record of a blow-down: the forward blow-up it inverts and the target locus."""

    target: object = None


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _units(m: int) -> list[int]:
    if m == 1:
        return [0]
    return [l for l in range(1, m) if math.gcd(l, m) == 1]


def _isolated_candidates(g: Multigraph, south: str, north: str, edge_index):
    """Pre-graphs for an exceptional sphere joining two isolated fixed points."""
    from .seifert import blow_down_order, sphere_degree

    d = sphere_degree(g, edge_index if edge_index is not None else (south, north))
    try:
        m = blow_down_order(d, g.vertex(south).m, g.vertex(north).m)
    except (NotNegative, NotIntegral) as exc:
        raise NotBlowDownable(str(exc)) from None
    u, v = g.vertex(south), g.vertex(north)
    if g.is_min(south) and g.is_max(north):
        raise NotBlowDownable("the sphere joins the minimum and the maximum")
    outer = {}
    for pole in (south, north):
        outer[pole] = [i for i in g.incident(pole) if i != edge_index]
    if len(outer[south]) + len(outer[north]) > 2:
        return
    position = "min" if g.is_min(south) else "max" if g.is_max(north) else "interior"
    xid = g.fresh_id("z")
    keep = [i for i in range(len(g.edges)) if i != edge_index]
    edges = []
    for i in keep:
        e = g.edges[i]
        s = xid if e.south in (south, north) else e.south
        n = xid if e.north in (south, north) else e.north
        edges.append(Edge(s, n, e.k))
    provisional = {"min": u.moment - 1, "max": v.moment + 1, "interior": u.moment}[position]
    for l0 in _units(m):
        x = IsolatedVertex(xid, m, l0, provisional)
        pre = g.with_changes(remove=[south, north], add=[x], edges=edges)
        try:
            ws = weight_slots(pre, xid)
        except OrbigraphError:
            return
        p, a1, a2 = ws.data.p, ws.data.a1, ws.data.a2
        if not type_condition_holds(ws.data, m, l0):
            continue
        k = m // p
        variants = [("P1", 1, k)] + ([("P2", k, 1)] if p < m else [])
        for variant, kappa, sigma in variants:
            for first, second in ((north, south), (south, north)):
                n1, n2 = g.vertex(first).m, g.vertex(second).m
                if n1 % kappa or n2 % kappa:
                    continue
                b1, b2 = n1 // kappa, n2 // kappa
                h1, h2 = g.vertex(first).moment, g.vertex(second).moment
                slope = sigma * (Fraction(a1, b1) - Fraction(a2, b2))
                if slope == 0:
                    continue
                eps = (h1 - h2) / slope
                if eps <= 0:
                    continue
                alpha = h1 - sigma * Fraction(a1, b1) * eps
                xa = IsolatedVertex(xid, m, l0, alpha)
                try:
                    cand = g.with_changes(remove=[south, north], add=[xa], edges=edges)
                    cand = cand.with_changes(replace_vertices=[normalize_labels(cand, xid)])
                except OrbigraphError:
                    continue
                for swap in (False, True) if a1 == a2 else (False,):
                    yield cand, BlowUpSpec(xid, variant, b1, b2, eps, label=l0, swap=swap)


def _surface_point_candidates(g: Multigraph, fid: str, yid: str, edge_index):
    """Pre-graphs for an exceptional sphere joining a fixed surface to an isolated point."""
    from .seifert import blow_down_order, sphere_degree

    fat, y = g.vertex(fid), g.vertex(yid)
    at_min = g.is_min(fid)
    ref = edge_index if edge_index is not None else ((fid, yid) if at_min else (yid, fid))
    d = sphere_degree(g, ref)
    if d >= 0:
        raise NotBlowDownable(f"degree {d} is not negative")
    n_j = g.edges[edge_index].k if edge_index is not None else 1
    n_i = y.m
    outer = [i for i in g.incident(yid) if i != edge_index]
    if len(outer) > 1:
        return
    if outer:
        m_options = {g.edges[outer[0]].k}
    else:
        try:
            m_options = {blow_down_order(d, n_j, n_i)}
        except NotIntegral as exc:
            raise NotBlowDownable(str(exc)) from None
    removable = [None] if n_j == 1 else sorted({s for s in fat.singular if s.m == n_j})
    keep = [i for i in range(len(g.edges)) if i != edge_index]
    edges = []
    for i in keep:
        e = g.edges[i]
        edges.append(Edge(fid if e.south == yid else e.south, fid if e.north == yid else e.north, e.k))
    new_edge = None
    if outer:
        new_edge = keep.index(outer[0])
    for m in sorted(m_options):
        variants = [("P1", 1, m)] + ([("P2", m, 1)] if m > 1 else [])
        for variant, kappa, sigma in variants:
            if n_i % kappa or n_j % kappa:
                continue
            b_i, b_j = n_i // kappa, n_j // kappa
            b1, b2 = (b_i, b_j) if at_min else (b_j, b_i)
            eps = abs(y.moment - fat.moment) * b_i / sigma
            decrement = eps / b_j if variant == "P1" else eps / (m * b_j)
            for gone in removable:
                for l0 in _units(m):
                    sing = list(fat.singular)
                    if gone is not None:
                        sing.remove(gone)
                    point = SingularType(m, l0) if m > 1 else None
                    if point is not None:
                        sing.append(point)
                    pre_fat = replace(fat, area=fat.area + decrement, singular=tuple(sing))
                    try:
                        cand = g.with_changes(remove=[yid], replace_vertices=[pre_fat], edges=edges)
                    except OrbigraphError:
                        continue
                    yield cand, BlowUpSpec(fid, variant, b1, b2, eps, point=point,
                                           edge=new_edge if point is not None else None)


def _surface_candidates(g: Multigraph, fid: str):
    """Pre-graphs in which a genus-0 fixed surface is the exceptional divisor."""
    from .localization import solve_surface_degrees

    fat = g.vertex(fid)
    if fat.genus != 0 or len(fat.singular) > 2:
        raise NotBlowDownable("only genus-0 surfaces with at most two singular points blow down")
    beta = solve_surface_degrees(g)[fid].beta
    if beta >= 0:
        raise NotBlowDownable(f"surface degree {beta} is not negative")
    at_min = g.is_min(fid)
    orders = sorted([s.m for s in fat.singular] + [1] * (2 - len(fat.singular)), reverse=True)
    xid = g.fresh_id("z")
    edges = [Edge(xid if e.south == fid else e.south, xid if e.north == fid else e.north, e.k)
             for e in g.edges]
    for kappa in _divisors(math.gcd(*orders)):
        o1, o2 = orders[0] // kappa, orders[1] // kappa
        m = -beta * kappa * kappa * o1 * o2
        if m.denominator != 1 or m < 1:
            continue
        m = int(m)
        if m % kappa:
            continue
        p = m // kappa
        if kappa > 1 and p >= m:
            continue
        if kappa == 1 and p != m:
            continue
        variant = "P1" if kappa == 1 else "P2"
        eps = fat.area * o1 * o2 * m / (p * p)
        alpha = fat.moment - eps if at_min else fat.moment + eps
        a = (o1, o2) if at_min else (o2, o1)
        for l0 in _units(m):
            x = IsolatedVertex(xid, m, l0, alpha)
            try:
                cand = g.with_changes(remove=[fid], add=[x], edges=edges)
                cand = cand.with_changes(replace_vertices=[normalize_labels(cand, xid)])
            except OrbigraphError:
                continue
            for swap in (False, True) if a[0] == a[1] else (False,):
                yield cand, BlowUpSpec(xid, variant, a[0], a[1], eps, label=l0, swap=swap)


BlowDownTarget = Union[int, tuple, str]


def _candidates(g: Multigraph, target: BlowDownTarget):
    if isinstance(target, bool):
        raise InvalidEdge("invalid blow-down target")
    if isinstance(target, int):
        if not (0 <= target < len(g.edges)):
            raise InvalidEdge(f"no edge with index {target}")
        e = g.edges[target]
        s, n = g.vertex(e.south), g.vertex(e.north)
        if isinstance(s, FatVertex) and isinstance(n, FatVertex):
            raise NotBlowDownable("an edge between two fixed surfaces does not blow down")
        if isinstance(s, FatVertex):
            return _surface_point_candidates(g, s.id, n.id, target)
        if isinstance(n, FatVertex):
            return _surface_point_candidates(g, n.id, s.id, target)
        return _isolated_candidates(g, s.id, n.id, target)
    if isinstance(target, tuple):
        south, north = target
        s, n = g.vertex(south), g.vertex(north)
        if not s.moment < n.moment:
            raise InvalidEdge("free sphere poles must be given as (south, north)")
        if isinstance(s, FatVertex) and isinstance(n, FatVertex):
            raise NotBlowDownable("a free sphere between two fixed surfaces does not blow down")
        if isinstance(s, FatVertex):
            return _surface_point_candidates(g, s.id, n.id, None)
        if isinstance(n, FatVertex):
            return _surface_point_candidates(g, n.id, s.id, None)
        return _isolated_candidates(g, south, north, None)
    if isinstance(target, str):
        if not isinstance(g.vertex(target), FatVertex):
            raise InvalidEdge(f"vertex {target!r} is not a fixed surface")
        return _surface_candidates(g, target)
    raise InvalidEdge(f"unsupported blow-down target {target!r}")


def blow_down(g: Multigraph, target: BlowDownTarget):
    """Blow down an edge (index), a free sphere ``(south, north)`` or a fixed surface (id).

    Every blow-up that could have produced the locus is enumerated; the
    candidates whose forward rewrite is isomorphic to ``g`` are kept.
    """
    require_valid(g)
    target_canon = _canonical_unchecked(g)
    found = {}
    for cand, spec in _candidates(g, target):
        if not validate(cand).ok:
            continue
        try:
            out, rec = _blow_up_checked_input(cand, spec)
        except OrbigraphError:
            continue
        if _canonical_unchecked(out) != target_canon:
            continue
        key = _canonical_unchecked(cand)
        if key not in found:
            found[key] = (cand, rec)
    if not found:
        raise NoInverse(f"no weighted blow-up reproduces the graph at {target!r}")
    if len(found) > 1:
        raise Ambiguous(f"{len(found)} inequivalent blow-downs at {target!r}")
    cand, rec = next(iter(found.values()))
    created = tuple(v.id for v in cand.vertices if not g.has_vertex(v.id))
    removed = tuple(v.id for v in g.vertices if not cand.has_vertex(v.id))
    record = BlowDownRecord(rec.spec, rec.case, rec.upside_down, created, removed, "down", target)
    return cand, record


def blow_down_candidates(g: Multigraph):
    """All loci that might blow down, interior-interior edges first."""
    from .seifert import sphere_degree

    targets = []
    interior = {v.id for v in g.vertices if not g.is_min(v.id) and not g.is_max(v.id)}
    inner, outer = [], []
    for i, e in enumerate(g.edges):
        (inner if e.south in interior and e.north in interior else outer).append(i)
    for i in inner + outer:
        try:
            if sphere_degree(g, i) < 0:
                targets.append(i)
        except OrbigraphError:
            continue
    free_up, free_down = [], []
    for v in g.vertices:
        if isinstance(v, FatVertex):
            free_up.append(v.id) if g.is_min(v.id) else free_down.append(v.id)
            continue
        ws = weight_slots(g, v.id)
        w = ws.data.weights
        for i in (0, 1):
            if ws.edges[i] is None and w[i] > 0:
                free_up.append(v.id)
                break
        for i in (0, 1):
            if ws.edges[i] is None and w[i] < 0:
                free_down.append(v.id)
                break
    for a in free_up:
        for b in free_down:
            if a == b or not g.vertex(a).moment < g.vertex(b).moment:
                continue
            if isinstance(g.vertex(a), FatVertex) and isinstance(g.vertex(b), FatVertex):
                continue
            try:
                if sphere_degree(g, (a, b)) < 0:
                    targets.append((a, b))
            except OrbigraphError:
                continue
    for v in g.fat:
        if v.genus == 0 and len(v.singular) <= 2:
            targets.append(v.id)
    return targets


__all__ = [
    "BlowUpSpec", "RewriteRecord", "BlowDownRecord", "Unbounded", "classify_case", "blow_up",
    "max_admissible", "blow_down", "blow_down_candidates", "replay", "InvalidGraph",
    "InvalidInput",
]
