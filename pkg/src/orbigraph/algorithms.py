"""Global procedures: desingularization, minimalization and classification of minimal graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import (Ambiguous, InvalidSpec, NoInverse, NotBlowDownable, OrbigraphError)
from .graph import (_canonical_unchecked, FatVertex, IsolatedVertex, Multigraph, SingularType, ValidationReport,
                    require_valid, validate, weight_slots)
from .localization import residuals, solve_surface_degrees
from .rewrite import (BlowUpSpec, RewriteRecord, Unbounded, blow_down, blow_down_candidates,
                      _blow_up_checked_input, blow_up, max_admissible)
from .seifert import fat_vertex_seifert

# ---------------------------------------------------------------------------
# desingularization


def _singular_sites(g: Multigraph):
    """``(m, moment, id, point)`` for every singular point; ``point`` is None for isolated ones."""
    sites = []
    for v in g.vertices:
        if isinstance(v, IsolatedVertex):
            if v.m > 1:
                sites.append((v.m, v.moment, v.id, None))
        else:
            for s in v.singular:
                sites.append((s.m, v.moment, v.id, s))
    return sorted(sites, key=lambda t: (t[0], t[1], t[2], t[3] or SingularType(1, 0)))


def singular_point_count(g: Multigraph) -> int:
    return len(_singular_sites(g))


def _desing_specs(g: Multigraph, m: int, vid: str, point):
    """One resolution step at a point of type 1/m(1,l): weights ``(l', 1)``.

    When ``l^2 = 1 (mod m)`` the two coordinates of the chart play symmetric
    roles and ``(1, l)`` is the same step with the coordinates exchanged; then
    the variant whose exceptional divisor is a sphere (not a fixed surface) is
    taken.  Either way the new order is ``l'``, so the order history follows the
    continued fraction of ``m / l'``.
    """
    v = g.vertex(vid)
    l = point.l if point is not None else v.l
    lp = pow(l, -1, m)
    primary = [BlowUpSpec(vid, "P1", lp, 1, point=point)]
    symmetric = (l * l) % m == 1
    if symmetric:
        primary.append(BlowUpSpec(vid, "P1", 1, l, point=point))
    fallback = []
    if isinstance(v, IsolatedVertex) and v.l2 is not None:
        fallback.append(BlowUpSpec(vid, "P1", pow(v.l2, -1, m), 1, label=v.l2))
    results = []
    for spec in primary:
        try:
            results.append(_blow_up_checked_input(g, spec))
        except OrbigraphError:
            continue
    if not results:
        for spec in fallback:
            try:
                results.append(_blow_up_checked_input(g, spec))
            except OrbigraphError:
                continue
    if not results:
        raise InvalidSpec(f"no resolution step applies at the order-{m} point of {vid}")
    results.sort(key=lambda r: r[1].case == "III")
    return results[0]


def desingularize(g: Multigraph):
    """Resolve all singular points by weighted blow-ups; returns the graph and the steps."""
    require_valid(g)
    records = []
    while True:
        sites = _singular_sites(g)
        if not sites:
            return g, records
        m, _, vid, point = sites[0]
        before = (len(sites), m)
        g, rec = _desing_specs(g, m, vid, point)
        records.append(rec)
        after_sites = _singular_sites(g)
        after = (len(after_sites), after_sites[0][0] if after_sites else 0)
        if not _measure_decreased(before, after, sites, after_sites):
            raise AssertionError("desingularization measure failed to decrease")


def _measure_decreased(before, after, old, new) -> bool:
    """The multiset of singular orders strictly decreases in the multiset ordering."""
    a = sorted((s[0] for s in old), reverse=True)
    b = sorted((s[0] for s in new), reverse=True)
    removed = list(a)
    for x in b:
        if x in removed:
            removed.remove(x)
        else:
            # every new order must be dominated by some removed order
            if not any(r > x for r in removed):
                return False
    return len(removed) > 0


# ---------------------------------------------------------------------------
# minimalization


def minimalize(g: Multigraph, max_nodes: int = 5000):
    """Blow down exceptional loci until none remains; returns the graph and the steps.

    Blow-downs are tried in priority order (interior-interior edges first).  The
    two tabulated blow-up families are not closed under every order of
    blow-downs: a greedy choice can strand a negative sphere that only a more
    general weighted blow-down would remove.  The search therefore backtracks
    until it reaches a graph that matches a minimal template; if none is found
    within ``max_nodes`` graphs, the first terminal graph reached is returned.
    """
    require_valid(g)
    seen = set()
    first_terminal = []

    def search(h, records):
        key = _canonical_unchecked(h)
        if key in seen or len(seen) >= max_nodes:
            return None
        seen.add(key)
        progressed = False
        for target in blow_down_candidates(h):
            try:
                nxt, rec = blow_down(h, target)
            except (NotBlowDownable, NoInverse, Ambiguous, InvalidSpec):
                continue
            progressed = True
            found = search(nxt, records + [rec])
            if found is not None:
                return found
        if not progressed:
            if not first_terminal:
                first_terminal.append((h, records))
            if isinstance(_match_templates(h), FamilyTag):
                return h, records
        return None

    found = search(g, [])
    return found if found is not None else first_terminal[0]


# ---------------------------------------------------------------------------
# classification of minimal graphs


@dataclass(frozen=True)
class FamilyTag:
    """A matched minimal family with its extracted parameters and checked conditions."""

    family: str
    parameters: dict
    conditions: tuple = ()
    upside_down: bool = False

    def describe(self) -> str:
        params = " ".join(f"{k}={_fmt(v)}" for k, v in self.parameters.items())
        return f"family {self.family}{' (upside down)' if self.upside_down else ''}: {params}"


@dataclass(frozen=True)
class NotMinimal:
    """The graph admits a blow-down at ``target``."""

    target: object
    record: RewriteRecord

    def describe(self) -> str:
        return f"not minimal: blow-down at {self.target!r}"


@dataclass(frozen=True)
class NoMatch:
    """No template fits; ``reason`` names the first violated condition."""

    reason: str
    family: Optional[str] = None

    def describe(self) -> str:
        return f"no match: {self.reason}"


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return str(v)


class _Fail(Exception):
    def __init__(self, family: str, condition: str):
        super().__init__(f"{family}-{condition}")
        self.family, self.condition = family, condition


class _Checker:
    def __init__(self, family: str):
        self.family = family
        self.passed = []

    def __call__(self, name: str, ok: bool):
        if not ok:
            raise _Fail(self.family, name)
        self.passed.append(name)


def _labels(v: IsolatedVertex) -> list[int]:
    return [t.l for t in v.types]


def _inv(l: int, n: int) -> int:
    return 0 if n == 1 else pow(l, -1, n)


def _edge_labels_between(g: Multigraph, a: str, b: str) -> list[int]:
    return sorted((e.k for e in g.edges if {e.south, e.north} == {a, b}), reverse=True)


def _padded(labels, n=2):
    return list(labels) + [1] * (n - len(labels))


def _edgeless_interior_ok(g, vids, chk, cond):
    ks = []
    for vid in vids:
        v = g.vertex(vid)
        chk(cond + " (interior edgeless points)", isinstance(v, IsolatedVertex) and not g.incident(vid))
        k = v.m
        chk(cond + " (interior types 1/k(1,k-1))", (k - 1) % k in [l % k for l in _labels(v)] or k == 1)
        ks.append(k)
    return ks


def _match_C(g: Multigraph):
    iso = g.isolated
    if g.fat or len(iso) < 3:
        return None
    lo = min(iso, key=lambda v: v.moment)
    hi = max(iso, key=lambda v: v.moment)
    others = [v.id for v in iso if v.id not in (lo.id, hi.id)]
    if any(g.incident(vid) for vid in others):
        return None
    if len(g.edges) != len(_edge_labels_between(g, lo.id, hi.id)):
        return None
    e1, e2 = _padded(_edge_labels_between(g, lo.id, hi.id))
    chk = _Checker("C")
    c = math.gcd(e1, e2)
    chk("shape (c divides the extremal orders)", lo.m % c == 0 and hi.m % c == 0)
    m1, m2 = e1 // c, e2 // c
    q, p = lo.m // c, hi.m // c
    alpha = lo.moment
    a = (hi.moment - alpha) / (c * m1 * m2)
    ks = _edgeless_interior_ok(g, others, chk, "shape")
    chk("(i)", math.gcd(m1, m2) == 1 and all(math.gcd(mi, x) == 1 for mi in (m1, m2) for x in (p, q)))
    mi, mj = max(m1, m2), min(m1, m2)
    best = None
    for lmin in _labels(lo):
        for lmax in _labels(hi):
            ok2 = (q * c == 1 or (1 <= lmin < c * q and math.gcd(lmin, c * q) == 1)) and \
                  (p * c == 1 or (1 <= lmax < c * p and math.gcd(lmax, c * p) == 1))
            ok3 = math.gcd(mi * lmin - mj, q * c) == q and math.gcd(mj * lmax - mi, p * c) == p
            if ok2 and ok3:
                best = (lmin, lmax)
                break
        if best:
            break
    chk("(ii)", best is not None or _any_ii_C(lo, hi, c, p, q))
    chk("(iii)", best is not None)
    chk("(iv)", p + q == c * m1 * m2 * sum(ks))
    hs = [g.vertex(v).moment for v in others]
    chk("(v)", p * a == sum((k * (h - alpha) for k, h in zip(ks, hs)), Fraction(0))
        and all(alpha < h < alpha + c * m1 * m2 * a for h in hs))
    params = {"p": p, "q": q, "c": c, "m1": m1, "m2": m2, "k": tuple(ks), "l_min": best[0],
              "l_max": best[1], "a": a, "alpha": alpha, "H": tuple(hs)}
    return FamilyTag("C", params, tuple(chk.passed))


def _any_ii_C(lo, hi, c, p, q) -> bool:
    okmin = any(q * c == 1 or (1 <= l < c * q and math.gcd(l, c * q) == 1) for l in _labels(lo))
    okmax = any(p * c == 1 or (1 <= l < c * p and math.gcd(l, c * p) == 1) for l in _labels(hi))
    return okmin and okmax


def _match_A(g: Multigraph):
    iso = g.isolated
    if g.fat or len(iso) != 4:
        return None
    lo = min(iso, key=lambda v: v.moment)
    hi = max(iso, key=lambda v: v.moment)
    mids = [v for v in iso if v.id not in (lo.id, hi.id)]
    if any(_edge_labels_between(g, lo.id, hi.id)) or _edge_labels_between(g, mids[0].id, mids[1].id):
        return None
    first_fail = None
    for X, Y in ((mids[0], mids[1]), (mids[1], mids[0])):
        n = _padded(_edge_labels_between(g, lo.id, X.id), 1)
        m = _padded(_edge_labels_between(g, lo.id, Y.id), 1)
        n2 = _padded(_edge_labels_between(g, Y.id, hi.id), 1)
        m2 = _padded(_edge_labels_between(g, X.id, hi.id), 1)
        if len(n) != 1 or len(m) != 1 or n != n2 or m != m2:
            continue
        n, m = n[0], m[0]
        if m < n:
            continue
        chk = _Checker("A")
        try:
            c = lo.m
            chk("shape (all orders equal c)", all(v.m == c for v in iso))
            alpha = lo.moment
            gamma = (X.moment - alpha) / n
            beta = (Y.moment - alpha) / m
            chk("shape (moment labels)", hi.moment == alpha + m * beta + n * gamma)
            found = None
            for l in _labels(X):
                lp = _inv(l, c)
                types_ok = (lp % c in [x % c for x in _labels(Y)]
                            and (c - l) % c in [x % c for x in _labels(lo)]
                            and (c - lp) % c in [x % c for x in _labels(hi)])
                if types_ok:
                    found = (l, lp)
                    break
            chk("(i)", found is not None)
            l, lp = found
            d = math.gcd(m, n)
            chk("(ii)", c % d == 0 and (c == 1 or math.gcd((m * l + n) // d, c) == c // d))
            params = {"c": c, "l": l, "m": m, "n": n, "alpha": alpha, "beta": beta, "gamma": gamma}
            return FamilyTag("A", params, tuple(chk.passed))
        except _Fail as f:
            first_fail = first_fail or f
    if first_fail:
        raise first_fail
    return None


def _match_B(g: Multigraph):
    iso = g.isolated
    if g.fat or len(iso) < 3:
        return None
    lo = min(iso, key=lambda v: v.moment)
    hi = max(iso, key=lambda v: v.moment)
    mids = [v for v in iso if v.id not in (lo.id, hi.id)]
    first_fail = None
    for F in mids:
        others = [v.id for v in mids if v.id != F.id]
        if any(g.incident(v) for v in others):
            continue
        s_l = _padded(_edge_labels_between(g, lo.id, hi.id), 1)
        m_l = _padded(_edge_labels_between(g, F.id, hi.id), 1)
        n_l = _padded(_edge_labels_between(g, lo.id, F.id), 1)
        if len(s_l) != 1 or len(m_l) != 1 or len(n_l) != 1:
            continue
        s, m, n = s_l[0], m_l[0], n_l[0]
        chk = _Checker("B")
        try:
            p, q, k1 = hi.m, lo.m, F.m
            alpha = F.moment
            a2 = (hi.moment - alpha) / m
            a1 = (alpha - lo.moment) / n
            ks = _edgeless_interior_ok(g, others, chk, "shape")
            x = sum(ks)

            def unit(l, order):
                return order == 1 or (1 <= l < order and math.gcd(l, order) == 1)

            choice = None
            for lmax in _labels(hi):
                for lmin in _labels(lo):
                    for l1 in _labels(F):
                        if unit(lmax, p) and unit(lmin, q) and unit(l1, k1):
                            choice = (lmax, lmin, l1)
                            break
                    if choice:
                        break
                if choice:
                    break
            chk("(i)", choice is not None)

            def cond_ii(l1):
                d = math.gcd(m, n)
                return k1 % d == 0 and math.gcd((m * l1 + n) // d, k1) == k1 // d

            def cond_iii(lmax):
                l = lmax if s >= m else _inv(lmax, p)
                d = math.gcd(m, s)
                return (m * l - s) % d == 0 and p % d == 0 and math.gcd((m * l - s) // d, p) == p // d

            def cond_iv(lmin):
                l = lmin if n >= s else _inv(lmin, q)
                d = math.gcd(n, s)
                return (n * l - s) % d == 0 and q % d == 0 and math.gcd((n * l - s) // d, q) == q // d

            chk("(ii)", any(cond_ii(l) for l in _labels(F) if unit(l, k1)))
            chk("(iii)", any(cond_iii(l) for l in _labels(hi) if unit(l, p)))
            chk("(iv)", any(cond_iv(l) for l in _labels(lo) if unit(l, q)))
            chk("(v)", (p - x * m * s) * n + q * m == k1 * s and p >= x * m * s and q >= x * n * s)
            hs = [g.vertex(v).moment for v in others]
            chk("(vi)", p * a2 == q * a1 + s * sum((k * (h - alpha) for k, h in zip(ks, hs)), Fraction(0))
                and all(alpha - n * a1 < h < alpha + m * a2 for h in hs))
            params = {"p": p, "q": q, "s": s, "m": m, "n": n, "k": (k1, *ks), "l_max": choice[0],
                      "l_min": choice[1], "l1": choice[2], "a1": a1, "a2": a2, "alpha": alpha,
                      "H": tuple(hs)}
            return FamilyTag("B", params, tuple(chk.passed))
        except _Fail as f:
            first_fail = first_fail or f
    if first_fail:
        raise first_fail
    return None


def _match_I_II(g: Multigraph):
    if len(g.fat) != 1 or len(g.isolated) != 1:
        return None
    fat, iso = g.fat[0], g.isolated[0]
    family = "I" if g.is_max(fat.id) else "II"
    chk = _Checker(family)
    points = list(fat.singular) + [SingularType(1, 0)] * (2 - len(fat.singular))
    chk("shape (at most two singular points)", len(points) == 2)
    chk("shape (genus 0)", fat.genus == 0)
    orders = sorted(pt.m for pt in points)
    chk("shape (edges match the singular points)",
        _padded(_edge_labels_between(g, fat.id, iso.id)) == sorted(orders, reverse=True))
    c = math.gcd(*orders)
    chk("shape (c divides the isolated order)", iso.m % c == 0)
    q = iso.m // c
    beta = solve_surface_degrees(g)[fat.id].beta
    A = fat.area
    alpha = iso.moment if family == "I" else fat.moment
    other = fat.moment if family == "I" else iso.moment
    chk("shape (moment labels)", other == alpha + A / beta)

    def unit(l, order):
        return order == 1 or (1 <= l < order and math.gcd(l, order) == 1)

    fails = []
    assignments = {(points[0], points[1]), (points[1], points[0])}
    for P1, P2 in sorted(assignments, key=lambda t: (t[0].m, t[0].l, t[1].m, t[1].l)):
        p1, p2 = P1.m // c, P2.m // c
        if family == "I" and p1 < p2 or family == "II" and p1 > p2:
            continue
        l1, l2 = P1.l, P2.l
        l1p, l2p = _inv(l1, P1.m), _inv(l2, P2.m)
        for lqc in _labels(iso):
            sub = _Checker(family)
            try:
                sub("(i)", unit(lqc, q * c) and unit(l1, p1 * c) and unit(l2, p2 * c))
                sub("(ii)", (q * c == 1 or math.gcd(lqc, q * c) == 1)
                    and (p1 * c == 1 or math.gcd(l1, p1 * c) == 1)
                    and (p2 * c == 1 or math.gcd(l2, p2 * c) == 1))
                # local normal form at the isolated point: gcd(|p1 l - p2|, qc) = q
                sub("(iii)", math.gcd(abs(p1 * lqc - p2), q * c) == q)
                sub("(iv)", q == c * p1 * p2 * beta)
                if family == "I":
                    sub("(v)", (q - l1 * p2 - l2 * p1) % (p1 * p2 * c) == 0)
                    sub("(vi)", (p2 - lqc * p1 - l1p * q) % (p1 * q * c) == 0)
                else:
                    sub("(v)", (q - l1p * p2 - l2p * p1) % (p1 * p2 * c) == 0)
                    sub("(vi)", (p2 - l1 * q - lqc * p1) % (p1 * q * c) == 0)
            except _Fail as f:
                fails.append(f)
                continue
            params = {"p1": p1, "p2": p2, "q": q, "c": c, "l1": l1, "l2": l2, "l_qc": lqc,
                      "beta": beta, "A": A, "alpha": alpha}
            return FamilyTag(family, params, tuple(chk.passed + sub.passed))
    if fails:
        raise max(fails, key=lambda f: f.condition)
    raise _Fail(family, "shape (ordering of p1, p2)")


def _match_III(g: Multigraph):
    if len(g.fat) != 2 or g.isolated:
        return None
    lo = min(g.fat, key=lambda v: v.moment)
    hi = max(g.fat, key=lambda v: v.moment)
    chk = _Checker("III")
    chk("shape (equal genus)", lo.genus == hi.genus)
    orders_lo = sorted(s.m for s in lo.singular)
    orders_hi = sorted(s.m for s in hi.singular)
    chk("shape (matching singular orders)", orders_lo == orders_hi)
    chk("shape (one edge per singular point)", sorted(e.k for e in g.edges) == orders_lo)
    betas = solve_surface_degrees(g)
    beta_minus = betas[lo.id].beta
    s = hi.moment - lo.moment
    chk("shape (areas)", hi.area == lo.area - beta_minus * s)
    n = len(lo.singular)
    chk("(i)", all(1 <= t.l < t.m for t in lo.singular + hi.singular))
    chk("(ii)", all(math.gcd(t.l, t.m) == 1 for t in hi.singular))
    chk("(iii)", not (lo.genus == 0 and n <= 2) or beta_minus == 0)
    # pair points of equal order: l' (upper, inverted) + l-hat (lower) = order
    by_order = {}
    for t in hi.singular:
        by_order.setdefault(t.m, [[], []])[0].append(t.l)
    for t in lo.singular:
        by_order.setdefault(t.m, [[], []])[1].append(t.l)
    ok4 = True
    for order, (ls, hats) in by_order.items():
        need = sorted((order - _inv(l, order)) % order for l in ls)
        if need != sorted(h % order for h in hats):
            ok4 = False
    chk("(iv)", ok4)
    total = sum((Fraction(t.l, t.m) for t in hi.singular), Fraction(0)) + beta_minus
    chk("(v)", total.denominator == 1)
    params = {"g": lo.genus, "p": tuple(orders_lo), "l": tuple(sorted(t.l for t in hi.singular)),
              "l_hat": tuple(sorted(t.l for t in lo.singular)), "beta_minus": beta_minus,
              "A": lo.area, "alpha": lo.moment, "s": s}
    return FamilyTag("III", params, tuple(chk.passed))


_MATCHERS = (_match_C, _match_A, _match_B, _match_I_II, _match_III)


def _stranded_interior_edge(g: Multigraph):
    for i, e in enumerate(g.edges):
        ends = (e.south, e.north)
        if not any(g.is_min(v) or g.is_max(v) for v in ends):
            return i
    return None


def _match_templates(g: Multigraph) -> Union[FamilyTag, NoMatch]:
    stranded = _stranded_interior_edge(g)
    if stranded is not None:
        return NoMatch(f"edge {stranded} joins two non-extremal fixed points; its negative "
                       "sphere blows down only by a weighted blow-down outside the two "
                       "tabulated families")
    first_fail = None
    for upside_down, h in ((False, g), (True, g.reflect())):
        for matcher in _MATCHERS:
            if upside_down and matcher is _match_I_II:
                continue
            try:
                tag = matcher(h)
            except _Fail as f:
                first_fail = first_fail or f
                continue
            if tag is not None:
                if upside_down:
                    tag = FamilyTag(tag.family, tag.parameters, tag.conditions, True)
                return tag
    if first_fail is not None:
        return NoMatch(f"family {first_fail.family} condition {first_fail.condition} fails",
                       first_fail.family)
    return NoMatch("the graph shape matches none of the minimal templates")


def classify_minimal(g: Multigraph) -> Union[FamilyTag, NotMinimal, NoMatch]:
    """Match a minimal graph against the six families, checking every condition exactly."""
    require_valid(g)
    for target in blow_down_candidates(g):
        try:
            _, rec = blow_down(g, target)
        except (NotBlowDownable, NoInverse, Ambiguous, InvalidSpec):
            continue
        return NotMinimal(target, rec)
    return _match_templates(g)


# ---------------------------------------------------------------------------
# aggregate verification


@dataclass
class VerifyReport:
    """Validation, localization residuals, surface Seifert data and label positivity."""

    validation: ValidationReport
    residuals: dict = field(default_factory=dict)
    seifert: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.validation.ok and not self.problems and all(r == 0 for r in self.residuals.values())

    def lines(self) -> list[str]:
        out = [f"valid: {'yes' if self.validation.ok else 'no'}"]
        out += [f"error: {e}" for e in self.validation.errors]
        out += [f"note: {n}" for n in self.validation.notes]
        for k, v in self.residuals.items():
            out.append(f"residual {k}: {v}")
        for vid, s in self.seifert.items():
            out.append(f"seifert {vid}: {s}")
        out += [f"problem: {p}" for p in self.problems]
        out.append("result: " + ("pass" if self.ok else "fail"))
        return out


def verify_all(g: Multigraph) -> VerifyReport:
    """Run every consistency check and report exact residuals (never raises)."""
    rep = VerifyReport(validate(g))
    if not rep.validation.ok:
        return rep
    try:
        rep.residuals = residuals(g)
    except OrbigraphError as exc:
        rep.problems.append(f"localization: {exc}")
        return rep
    for e in g.edges:
        if not g.vertex(e.south).moment < g.vertex(e.north).moment:
            rep.problems.append(f"edge {e.south}-{e.north} is not increasing")
    for v in g.fat:
        if v.area <= 0:
            rep.problems.append(f"surface {v.id} has non-positive area")
        try:
            s = fat_vertex_seifert(g, v.id)
            rep.seifert[v.id] = f"({s.g}; {s.b0}" + "".join(f", ({a},{b})" for a, b in s.pairs) + ")"
        except OrbigraphError as exc:
            rep.problems.append(f"surface {v.id}: {exc}")
    return rep


# ---------------------------------------------------------------------------
# randomized admissible blow-ups


def enumerate_specs(g: Multigraph, bound: int = 5) -> list[BlowUpSpec]:
    """Blow-up specs with weights up to ``bound`` whose congruence conditions hold."""
    specs = []
    for v in g.vertices:
        if isinstance(v, IsolatedVertex):
            ws = weight_slots(g, v.id)
            p, m = ws.data.p, v.m
            swaps = (False, True) if ws.data.a1 == ws.data.a2 else (False,)
            for l in _labels(v):
                for b1 in range(1, bound + 1):
                    for b2 in range(1, bound + 1):
                        if math.gcd(b1, b2) != 1:
                            continue
                        for swap in swaps:
                            label = l if v.l2 is not None else None
                            if (b1 * l - b2) % m == 0:
                                specs.append(BlowUpSpec(v.id, "P1", b1, b2, label=label, swap=swap))
                            if p < m and (b1 * l - b2) % p == 0 and \
                                    math.gcd((b1 * l - b2) // p, m // p) == 1:
                                specs.append(BlowUpSpec(v.id, "P2", b1, b2, label=label, swap=swap))
        else:
            at_min = g.is_min(v.id)
            for k in range(1, bound + 1):
                specs.append(BlowUpSpec(v.id, "P1", k, 1) if at_min else BlowUpSpec(v.id, "P1", 1, k))
            for t in sorted(set(v.singular)):
                for b1 in range(1, bound + 1):
                    for b2 in range(1, bound + 1):
                        if math.gcd(b1, b2) != 1:
                            continue
                        if (b1 * t.l - b2) % t.m == 0:
                            specs.append(BlowUpSpec(v.id, "P1", b1, b2, point=t))
                        if math.gcd(b1 * t.l - b2, t.m) == 1:
                            specs.append(BlowUpSpec(v.id, "P2", b1, b2, point=t))
    return specs


def random_blow_up(g: Multigraph, rng: random.Random, bound: int = 5, attempts: int = 200):
    """A random admissible blow-up of ``g`` with a random exact size; returns (graph, record)."""
    specs = enumerate_specs(g, bound)
    for _ in range(attempts):
        if not specs:
            break
        spec = specs.pop(rng.randrange(len(specs)))
        try:
            top = max_admissible(g, spec)
        except OrbigraphError:
            continue
        if top is Unbounded:
            eps = Fraction(rng.randint(1, 8), 8)
        else:
            eps = top * Fraction(rng.randint(1, 9), 10)
        try:
            return blow_up(g, BlowUpSpec(spec.vertex, spec.variant, spec.b1, spec.b2, eps,
                                         spec.point, spec.edge, spec.label, spec.swap))
        except OrbigraphError:
            continue
    raise InvalidSpec("no admissible blow-up found")


def exceptional_locus(g: Multigraph, record: RewriteRecord):
    """Blow-down target for the exceptional divisor created by ``record``."""
    created = record.created
    if record.case == "III":
        return created[0]
    if record.case == "IV":
        fat, y = record.spec.vertex, created[0]
        pair = {fat, y}
    else:
        pair = set(created)
    for i, e in enumerate(g.edges):
        if {e.south, e.north} == pair:
            return i
    a, b = sorted(pair, key=lambda vid: g.vertex(vid).moment)
    return (a, b)


__all__ = [
    "desingularize", "minimalize", "classify_minimal", "verify_all", "VerifyReport", "FamilyTag",
    "NotMinimal", "NoMatch", "enumerate_specs", "random_blow_up", "exceptional_locus",
    "singular_point_count",
]
