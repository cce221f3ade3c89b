"""Labeled multigraph of a Hamiltonian circle action on a 4-orbifold.

Vertices are isolated fixed points (``IsolatedVertex``) or fixed
orbi-surfaces (``FatVertex``); edges are isotropy orbi-spheres with
non-trivial stabilizer order ``k >= 2``.  All labels are exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Union

from .arith import as_rational
from .errors import Inconsistent, InvalidGraph, InvalidInput


@dataclass(frozen=True, order=True)
class SingularType:
    """Cyclic singular point of type ``1/m (1, l)``; ``(1, 0)`` is a regular point."""

    m: int
    l: int

    def problems(self) -> list[str]:
        if self.m < 1:
            return [f"order m={self.m} must be positive"]
        if self.m == 1:
            return [] if self.l == 0 else [f"regular point must have l=0, got {self.l}"]
        if not (1 <= self.l < self.m):
            return [f"type (m={self.m}, l={self.l}) needs 1 <= l < m"]
        if math.gcd(self.l, self.m) != 1:
            return [f"type (m={self.m}, l={self.l}) needs gcd(l, m) = 1"]
        return []

    @property
    def is_regular(self) -> bool:
        return self.m == 1

    @property
    def l_prime(self) -> int:
        """Inverse label ``l'`` with ``l * l' = 1 (mod m)`` (0 for regular points)."""
        if self.m == 1:
            return 0
        return pow(self.l, -1, self.m)

    def inverse(self) -> "SingularType":
        return SingularType(self.m, self.l_prime)


REGULAR = SingularType(1, 0)


@dataclass(frozen=True)
class IsolatedVertex:
    """Isolated fixed point of order ``m`` with one or two type labels."""

    id: str
    m: int
    l: int
    moment: Fraction
    l2: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "moment", as_rational(self.moment))
        if self.l2 is not None and self.l2 < self.l:
            a, b = self.l2, self.l
            object.__setattr__(self, "l", a)
            object.__setattr__(self, "l2", b)

    @property
    def types(self) -> tuple[SingularType, ...]:
        if self.l2 is None:
            return (SingularType(self.m, self.l),)
        return (SingularType(self.m, self.l), SingularType(self.m, self.l2))

    @property
    def kind(self) -> str:
        return "point"


@dataclass(frozen=True)
class FatVertex:
    """Fixed orbi-surface: genus, normalized area, singular points, moment."""

    id: str
    genus: int
    area: Fraction
    singular: tuple[SingularType, ...]
    moment: Fraction

    def __post_init__(self):
        object.__setattr__(self, "moment", as_rational(self.moment))
        object.__setattr__(self, "area", as_rational(self.area))
        sing = tuple(sorted(s if isinstance(s, SingularType) else SingularType(*s) for s in self.singular))
        object.__setattr__(self, "singular", sing)

    @property
    def kind(self) -> str:
        return "surface"


Vertex = Union[IsolatedVertex, FatVertex]


@dataclass(frozen=True)
class Edge:
    """Isotropy orbi-sphere with stabilizer order ``k`` from ``south`` to ``north``."""

    south: str
    north: str
    k: int


@dataclass(frozen=True)
class OrbiWeightData:
    """Orbi-weights ``a1/p >= a2/p`` at an isolated vertex."""

    p: int
    a1: int
    a2: int

    @property
    def weights(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.a1, self.p), Fraction(self.a2, self.p)


@dataclass(frozen=True)
class WeightSlots:
    """Orbi-weights together with the edge (index or ``None``) carrying each one."""

    data: OrbiWeightData
    edges: tuple[Optional[int], Optional[int]]


@dataclass(frozen=True)
class Multigraph:
    """Immutable labeled multigraph; edges are an ordered multiset."""

    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)
    _range: tuple = field(default=None, compare=False, repr=False, hash=False)
    _report: object = field(default=None, init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        index = {}
        for v in self.vertices:
            if v.id in index:
                raise InvalidInput(f"duplicate vertex id {v.id!r}")
            index[v.id] = v
        for e in self.edges:
            for end in (e.south, e.north):
                if end not in index:
                    raise InvalidInput(f"edge references unknown vertex {end!r}")
        object.__setattr__(self, "_index", index)
        moments = [v.moment for v in self.vertices]
        object.__setattr__(self, "_range", (min(moments), max(moments)) if moments else (None, None))

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._index[vid]
        except KeyError:
            raise InvalidInput(f"unknown vertex {vid!r}") from None

    def has_vertex(self, vid: str) -> bool:
        return vid in self._index

    def incident(self, vid: str) -> list[int]:
        """Indices of edges touching ``vid``."""
        return [i for i, e in enumerate(self.edges) if vid in (e.south, e.north)]

    @property
    def isolated(self) -> list[IsolatedVertex]:
        return [v for v in self.vertices if isinstance(v, IsolatedVertex)]

    @property
    def fat(self) -> list[FatVertex]:
        return [v for v in self.vertices if isinstance(v, FatVertex)]

    def min_moment(self) -> Optional[Fraction]:
        return self._range[0]

    def max_moment(self) -> Optional[Fraction]:
        return self._range[1]

    def is_min(self, vid: str) -> bool:
        return self.vertex(vid).moment == self._range[0]

    def is_max(self, vid: str) -> bool:
        return self.vertex(vid).moment == self._range[1]

    def fresh_id(self, prefix: str = "x") -> str:
        for n in itertools.count(len(self.vertices)):
            candidate = f"{prefix}{n}"
            if candidate not in self._index:
                return candidate
        raise AssertionError("unreachable")

    def with_changes(self, remove: Iterable[str] = (), add: Iterable[Vertex] = (),
                     replace_vertices: Iterable[Vertex] = (), edges=None) -> "Multigraph":
        """Return a new graph with vertices removed/added/replaced and optionally new edges."""
        remove = set(remove)
        repl = {v.id: v for v in replace_vertices}
        verts = [repl.get(v.id, v) for v in self.vertices if v.id not in remove]
        verts.extend(add)
        return Multigraph(tuple(verts), tuple(self.edges if edges is None else edges))

    def reflect(self) -> "Multigraph":
        """Image under ``H -> -H``: edges flip, every type ``l`` becomes ``l'``."""
        verts = []
        for v in self.vertices:
            if isinstance(v, IsolatedVertex):
                labels = {SingularType(v.m, l).l_prime for l in (v.l, v.l2) if l is not None}
                labels = sorted(labels)
                verts.append(IsolatedVertex(v.id, v.m, labels[0], -v.moment,
                                            labels[1] if len(labels) > 1 else None))
            else:
                verts.append(replace(v, moment=-v.moment,
                                     singular=tuple(s.inverse() for s in v.singular)))
        edges = tuple(Edge(e.north, e.south, e.k) for e in self.edges)
        return Multigraph(tuple(verts), edges)


# ---------------------------------------------------------------------------
# orbi-weights


def weight_slots(g: Multigraph, vid: str) -> WeightSlots:
    """Orbi-weights at an isolated vertex and the edge carrying each weight.

    Absent edges count as label 1.  Among equal effective labels the edge with
    the smaller index takes the first slot.
    """
    v = g.vertex(vid)
    if not isinstance(v, IsolatedVertex):
        raise InvalidInput(f"vertex {vid!r} is not an isolated fixed point")
    inc = g.incident(vid)
    if len(inc) > 2:
        raise Inconsistent(f"vertex {vid!r} has {len(inc)} incident edges (at most 2 allowed)")
    up = [i for i in inc if g.edges[i].south == vid]
    down = [i for i in inc if g.edges[i].north == vid]
    at_min = g.is_min(vid)
    at_max = g.is_max(vid)
    if at_min and at_max and len(g.vertices) > 1:
        raise Inconsistent("graph has a single moment value")
    if at_min or (at_max and not at_min):
        slots = up if at_min else down
        if (at_min and down) or (at_max and not at_min and up):
            raise Inconsistent(f"extremal vertex {vid!r} has an edge in the wrong direction")
        labelled = sorted(((g.edges[i].k, i) for i in slots), key=lambda t: (-t[0], t[1]))
        while len(labelled) < 2:
            labelled.append((1, None))
        (k1, e1), (k2, e2) = labelled
        d = math.gcd(k1, k2)
        if v.m % d:
            raise Inconsistent(f"gcd of edge labels {d} does not divide m={v.m} at {vid!r}")
        p = v.m // d
        if at_min:
            return WeightSlots(OrbiWeightData(p, k1 // d, k2 // d), (e1, e2))
        return WeightSlots(OrbiWeightData(p, -(k2 // d), -(k1 // d)), (e2, e1))
    if len(up) > 1 or len(down) > 1:
        raise Inconsistent(f"interior vertex {vid!r} has two edges in the same direction")
    e1 = up[0] if up else None
    e2 = down[0] if down else None
    k1 = g.edges[e1].k if e1 is not None else 1
    k2 = g.edges[e2].k if e2 is not None else 1
    d = math.gcd(k1, k2)
    if v.m % d:
        raise Inconsistent(f"gcd of edge labels {d} does not divide m={v.m} at {vid!r}")
    return WeightSlots(OrbiWeightData(v.m // d, k1 // d, -(k2 // d)), (e1, e2))


def derive_weights(g: Multigraph, vid: str) -> OrbiWeightData:
    """Orbi-weights ``(p, a1, a2)`` of the circle action at an isolated vertex."""
    return weight_slots(g, vid).data


def type_condition_holds(w: OrbiWeightData, m: int, l: int) -> bool:
    """Local normal form condition ``gcd(|a1 l - a2|, m) = p``."""
    return math.gcd(abs(w.a1 * l - w.a2), m) == w.p


def needs_two_labels(w: OrbiWeightData, t: SingularType) -> bool:
    """Both ``l`` and ``l'`` label a vertex when its weights are equal and ``l^2 != 1``."""
    return t.m > 1 and w.a1 == w.a2 and (t.l * t.l) % t.m != 1


def normalize_labels(g: Multigraph, vid: str) -> IsolatedVertex:
    """Return the vertex with its label set completed or reduced per the two-label rule."""
    v = g.vertex(vid)
    w = derive_weights(g, vid)
    t = SingularType(v.m, v.l)
    if needs_two_labels(w, t):
        other = t.l_prime
        return IsolatedVertex(v.id, v.m, min(t.l, other), v.moment, max(t.l, other))
    return IsolatedVertex(v.id, v.m, v.l, v.moment)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    """All violated conditions (``errors``) plus informational ``notes``."""

    errors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    weights: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok


def validate(g: Multigraph) -> ValidationReport:
    """Check structural, local-normal-form and global conditions; never raises.

    Graphs are immutable, so the report is computed once per graph object.
    """
    if g._report is None:
        object.__setattr__(g, "_report", _validate(g))
    return g._report


def _validate(g: Multigraph) -> ValidationReport:
    rep = ValidationReport()
    if not g.vertices:
        return rep
    if len(g.vertices) < 2:
        rep.errors.append("a compact space has at least two fixed components")
        return rep
    lo, hi = g.min_moment(), g.max_moment()
    mins = [v.id for v in g.vertices if v.moment == lo]
    maxs = [v.id for v in g.vertices if v.moment == hi]
    if len(mins) != 1:
        rep.errors.append(f"global minimum is not unique: {mins}")
    if len(maxs) != 1:
        rep.errors.append(f"global maximum is not unique: {maxs}")
    fats = g.fat
    if len(fats) > 2:
        rep.errors.append(f"{len(fats)} fixed surfaces (at most two allowed)")
    for i, e in enumerate(g.edges):
        if e.k < 2:
            rep.errors.append(f"edge {i} ({e.south}->{e.north}) has label k={e.k} < 2")
        if e.south == e.north:
            rep.errors.append(f"edge {i} is a loop at {e.south}")
            continue
        if not g.vertex(e.south).moment < g.vertex(e.north).moment:
            rep.errors.append(f"edge {i} ({e.south}->{e.north}) has non-increasing moment")
    for v in fats:
        if v.moment not in (lo, hi):
            rep.errors.append(f"fixed surface {v.id} is not at a global extremum")
        if v.genus < 0:
            rep.errors.append(f"fixed surface {v.id} has negative genus")
        if v.area <= 0:
            rep.errors.append(f"fixed surface {v.id} has non-positive area {v.area}")
        for s in v.singular:
            for msg in s.problems():
                rep.errors.append(f"fixed surface {v.id}: {msg}")
            if s.m == 1:
                rep.errors.append(f"fixed surface {v.id} lists a regular point as singular")
        inc = g.incident(v.id)
        labels = sorted(g.edges[i].k for i in inc)
        orders = sorted(s.m for s in v.singular)
        if labels != orders:
            rep.errors.append(
                f"fixed surface {v.id}: edge labels {labels} differ from singular orders {orders}")
        for i in inc:
            e = g.edges[i]
            if v.moment == lo and e.north == v.id or v.moment == hi and e.south == v.id:
                rep.errors.append(f"edge {i} points into fixed surface {v.id} from the wrong side")
    if rep.errors:
        return rep
    for v in g.isolated:
        bad = False
        for t in v.types:
            for msg in t.problems():
                rep.errors.append(f"vertex {v.id}: {msg}")
                bad = True
        if v.l2 is not None and v.m > 1 and (v.l * v.l2) % v.m != 1:
            rep.errors.append(f"vertex {v.id}: labels {v.l},{v.l2} are not mutually inverse mod {v.m}")
            bad = True
        try:
            w = derive_weights(g, v.id)
        except Inconsistent as exc:
            rep.errors.append(f"vertex {v.id}: {exc}")
            continue
        rep.weights[v.id] = w
        if bad:
            continue
        if math.gcd(w.a1, w.a2) != 1:
            rep.errors.append(f"vertex {v.id}: weights not coprime")
        for t in v.types:
            if t.m > 1 and not type_condition_holds(w, t.m, t.l):
                rep.errors.append(
                    f"vertex {v.id}: gcd(|a1*l - a2|, m) != p for l={t.l} "
                    f"(a1={w.a1}, a2={w.a2}, p={w.p}, m={t.m})")
        if v.m == 1 and w.p != 1:
            rep.errors.append(f"regular vertex {v.id} has non-trivial stabilizers")
        t = v.types[0]
        if v.l2 is None and needs_two_labels(w, t):
            rep.errors.append(f"vertex {v.id}: equal weights require both labels {t.l} and {t.l_prime}")
        if v.l2 is not None and not needs_two_labels(w, t):
            rep.errors.append(f"vertex {v.id}: carries two labels but only one is determined")
        d = math.gcd(*(g.edges[i].k if i is not None else 1 for i in weight_slots(g, v.id).edges))
        if v.m > 1 and d * d != v.m and d > 1:
            rep.notes.append(
                f"vertex {v.id}: p = m/gcd(k1,k2) = {w.p} differs from the reading p = gcd(k1,k2) = {d}")
    return rep


def require_valid(g: Multigraph) -> ValidationReport:
    rep = validate(g)
    if not rep.ok:
        raise InvalidGraph("graph fails validation: " + "; ".join(rep.errors), rep)
    return rep


# ---------------------------------------------------------------------------
# canonical form and isomorphism


def _vertex_key(v: Vertex):
    if isinstance(v, IsolatedVertex):
        return (v.moment, 0, v.m, tuple(t.l for t in v.types), 0, Fraction(0))
    return (v.moment, 1, 0, tuple((s.m, s.l) for s in v.singular), v.genus, v.area)


def _edge_list(g: Multigraph, order: dict) -> tuple:
    return tuple(sorted((order[e.south], order[e.north], e.k) for e in g.edges))


def _best_order(g: Multigraph):
    """Vertex ordering minimizing the edge list among label-preserving tie permutations."""
    ordered = sorted(g.vertices, key=_vertex_key)
    groups = [list(grp) for _, grp in itertools.groupby(ordered, key=_vertex_key)]
    best = None
    best_edges = None
    choices = [itertools.permutations(grp) for grp in groups]
    for count, combo in enumerate(itertools.product(*choices)):
        seq = [v for grp in combo for v in grp]
        order = {v.id: i for i, v in enumerate(seq)}
        edges = _edge_list(g, order)
        if best_edges is None or edges < best_edges:
            best, best_edges = seq, edges
        if count > 50000:
            break
    return best, best_edges


def canonical_form(g: Multigraph) -> Multigraph:
    """Deterministic relabeling (ids ``v0, v1, ...``) with sorted vertices and edges."""
    require_valid(g)
    return _canonical_unchecked(g)


def _canonical_unchecked(g: Multigraph) -> Multigraph:
    if not g.vertices:
        return Multigraph()
    seq, edges = _best_order(g)
    verts = []
    for i, v in enumerate(seq):
        verts.append(replace(v, id=f"v{i}"))
    return Multigraph(tuple(verts), tuple(Edge(f"v{s}", f"v{n}", k) for s, n, k in edges))


def is_isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    """True iff a label-preserving bijection maps ``g1`` onto ``g2``."""
    require_valid(g1)
    require_valid(g2)
    return _canonical_unchecked(g1) == _canonical_unchecked(g2)


def same_graph(g1: Multigraph, g2: Multigraph) -> bool:
    """Isomorphism test that does not insist on validity (used internally)."""
    return _canonical_unchecked(g1) == _canonical_unchecked(g2)
