"""Text documents for multigraphs, DOT export and the ``orbigraph`` command line."""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional

from .algorithms import (FamilyTag, classify_minimal, desingularize, minimalize,
                         singular_point_count, verify_all)
from .catalog import gen_cp1cp1_quot, gen_ruled, gen_tsw, gen_wpp, gen_wpp_surface
from .errors import (DocumentSyntaxError, InadmissibleSize, InvalidEdge, InvalidParams,
                     InvalidSpec, OrbigraphError, SemanticError)
from .graph import (Edge, FatVertex, IsolatedVertex, Multigraph, SingularType,
                    canonical_form, is_isomorphic, validate)
from .rewrite import BlowUpSpec, RewriteRecord, blow_down, blow_up
from .seifert import SeifertInvariant

HEADER = "orbigraph v1"

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_INT = re.compile(r"^[+-]?\d+$")
_SING = re.compile(r"\((\d+),(\d+)\)")


def _rational(text: str, lineno: int, what: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise DocumentSyntaxError(lineno, f"{what} must be an integer or num/den, got {text!r}")
    return Fraction(text)


def _int(text: str, lineno: int, what: str) -> int:
    if not _INT.match(text):
        raise DocumentSyntaxError(lineno, f"{what} must be an integer, got {text!r}")
    return int(text)


def _fields(tokens, lineno: int, required, optional=()) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise DocumentSyntaxError(lineno, f"expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        if key not in required and key not in optional:
            raise DocumentSyntaxError(lineno, f"unknown field {key!r}")
        if key in out:
            raise DocumentSyntaxError(lineno, f"duplicate field {key!r}")
        out[key] = value
    missing = [k for k in required if k not in out]
    if missing:
        raise DocumentSyntaxError(lineno, "missing field(s) " + ", ".join(missing))
    return out


def _parse_singular(text: str, lineno: int) -> tuple:
    if text == "":
        return ()
    pieces = re.split(r"(?<=\)),", text)
    out = []
    for piece in pieces:
        mt = _SING.fullmatch(piece)
        if not mt:
            raise DocumentSyntaxError(lineno, f"bad singular point {piece!r}; expected (M,L)")
        out.append(SingularType(int(mt.group(1)), int(mt.group(2))))
    return tuple(out)


def parse(text: str) -> Multigraph:
    """Parse a graph document; syntax errors carry the offending line number."""
    vertices, edges, ids = [], [], set()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise DocumentSyntaxError(lineno, f"expected header {HEADER!r}")
            seen_header = True
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) < 3:
                raise DocumentSyntaxError(lineno, "vertex needs an id and a kind")
            vid, vkind = tokens[1], tokens[2]
            if vid in ids:
                raise SemanticError(f"line {lineno}: duplicate vertex id {vid!r}")
            if vkind == "point":
                f = _fields(tokens[3:], lineno, ("m", "l", "H"), ("l2",))
                l2 = _int(f["l2"], lineno, "l2") if "l2" in f else None
                try:
                    v = IsolatedVertex(vid, _int(f["m"], lineno, "m"), _int(f["l"], lineno, "l"),
                                       _rational(f["H"], lineno, "H"), l2)
                except DocumentSyntaxError:
                    raise
                except OrbigraphError as exc:
                    raise SemanticError(f"line {lineno}: {exc}") from None
            elif vkind == "surface":
                f = _fields(tokens[3:], lineno, ("g", "area", "H"), ("sing",))
                try:
                    v = FatVertex(vid, _int(f["g"], lineno, "g"), _rational(f["area"], lineno, "area"),
                                  _parse_singular(f.get("sing", ""), lineno),
                                  _rational(f["H"], lineno, "H"))
                except DocumentSyntaxError:
                    raise
                except OrbigraphError as exc:
                    raise SemanticError(f"line {lineno}: {exc}") from None
            else:
                raise DocumentSyntaxError(lineno, f"vertex kind must be point or surface, got {vkind!r}")
            ids.add(vid)
            vertices.append(v)
        elif kind == "edge":
            if len(tokens) != 4:
                raise DocumentSyntaxError(lineno, "edge needs SOUTH NORTH k=K")
            f = _fields(tokens[3:], lineno, ("k",))
            edges.append((lineno, tokens[1], tokens[2], _int(f["k"], lineno, "k")))
        else:
            raise DocumentSyntaxError(lineno, f"unknown record {kind!r}")
    if not seen_header:
        raise DocumentSyntaxError(1, f"expected header {HEADER!r}")
    out_edges = []
    for lineno, s, n, k in edges:
        for end in (s, n):
            if end not in ids:
                raise SemanticError(f"line {lineno}: edge references unknown vertex {end!r}")
        try:
            out_edges.append(Edge(s, n, k))
        except OrbigraphError as exc:
            raise SemanticError(f"line {lineno}: {exc}") from None
    try:
        g = Multigraph(tuple(vertices), tuple(out_edges))
    except OrbigraphError as exc:
        raise SemanticError(str(exc)) from None
    report = validate(g)
    if not report.ok:
        raise SemanticError("; ".join(report.errors))
    return g


def emit(g: Multigraph) -> str:
    """Canonical document text for a valid graph."""
    c = canonical_form(g)
    lines = [HEADER]
    for v in c.vertices:
        if isinstance(v, IsolatedVertex):
            extra = f" l2={v.l2}" if v.l2 is not None else ""
            lines.append(f"vertex {v.id} point m={v.m} l={v.l}{extra} H={v.moment}")
        else:
            sing = ",".join(f"({s.m},{s.l})" for s in v.singular)
            tail = f" sing={sing}" if sing else ""
            lines.append(f"vertex {v.id} surface g={v.genus} area={v.area} H={v.moment}{tail}")
    for e in c.edges:
        lines.append(f"edge {e.south} {e.north} k={e.k}")
    return "\n".join(lines) + "\n"


def emit_dot(g: Multigraph) -> str:
    """Graphviz DOT text: fixed surfaces as large boxes, edge labels k, moments in red."""
    c = canonical_form(g)
    out = ["digraph orbigraph {", "  rankdir=BT;", "  node [shape=circle, style=filled, "
           "fillcolor=black, fontcolor=black, width=0.15, label=\"\"];"]
    for v in c.vertices:
        if isinstance(v, IsolatedVertex):
            types = " ".join(f"1/{t.m}(1,{t.l})" for t in v.types) if v.m > 1 else "regular"
            out.append(f'  {v.id} [xlabel=<{types}<BR/><FONT COLOR="red">H={v.moment}</FONT>>];')
        else:
            sing = " ".join(f"1/{s.m}(1,{s.l})" for s in v.singular)
            out.append(f'  {v.id} [shape=box, width=1.2, height=0.3, xlabel=<g={v.genus} '
                       f'A={v.area} {sing}<BR/><FONT COLOR="red">H={v.moment}</FONT>>];')
    for e in c.edges:
        out.append(f'  {e.south} -> {e.north} [arrowhead=none, label="{e.k}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def format_record(rec: RewriteRecord) -> str:
    return rec.describe()


def parse_record(line: str) -> BlowUpSpec:
    """Recover the blow-up spec from a logged step line."""
    fields = {}
    for tok in line.split():
        if "=" in tok:
            k, _, v = tok.partition("=")
            fields[k] = v
    point = None
    if "point" in fields:
        mt = _SING.fullmatch(fields["point"])
        point = SingularType(int(mt.group(1)), int(mt.group(2)))
    return BlowUpSpec(fields["vertex"], fields["variant"], int(fields["b1"]), int(fields["b2"]),
                      Fraction(fields["epsilon"]), point,
                      int(fields["edge"]) if "edge" in fields else None,
                      int(fields["label"]) if "label" in fields else None,
                      "swap" in line.split())


# ---------------------------------------------------------------------------
# command line


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> Multigraph:
    return parse(_read(path))


def _frac(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"expected an integer or num/den, got {text!r}")
    return Fraction(text)


def _pair(text: str):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A,B, got {text!r}") from None
    return a, b


def _write_log(path: Optional[str], lines):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("".join(l + "\n" for l in lines))


def _cmd_validate(args, out):
    rep = validate(parse(_read(args.file)))
    out.write("valid\n")
    for n in rep.notes:
        out.write(f"note: {n}\n")
    return 0


def _cmd_verify(args, out):
    rep = verify_all(_load(args.file))
    out.write("\n".join(rep.lines()) + "\n")
    return 0 if rep.ok else 1


def _cmd_blowup(args, out):
    g = _load(args.file)
    point = SingularType(*args.point) if args.point else None
    spec = BlowUpSpec(args.vertex, args.variant, args.b1, args.b2, args.size, point, args.edge,
                      args.label, args.swap)
    h, rec = blow_up(g, spec)
    out.write(emit(h))
    out.write(f"# {format_record(rec)}\n")
    return 0


def _cmd_blowdown(args, out):
    g = _load(args.file)
    if args.edge is not None:
        target = args.edge
    elif args.pair:
        target = tuple(args.pair)
    else:
        target = args.surface
    h, rec = blow_down(g, target)
    out.write(emit(h))
    out.write(f"# {format_record(rec)}\n")
    return 0


def _cmd_desing(args, out):
    g = _load(args.file)
    h, recs = desingularize(g)
    lines = [f"step {i}: {format_record(r)}" for i, r in enumerate(recs, start=1)]
    _write_log(args.log, [format_record(r) for r in recs])
    out.write(emit(h))
    for line in lines:
        out.write(f"# {line}\n")
    out.write(f"# singular points: {singular_point_count(h)}\n")
    return 0


def _cmd_minimalize(args, out):
    g = _load(args.file)
    h, recs = minimalize(g)
    _write_log(args.log, [format_record(r) for r in recs])
    out.write(emit(h))
    for i, r in enumerate(recs, start=1):
        out.write(f"# step {i}: {format_record(r)}\n")
    out.write(f"# blow-downs: {len(recs)}\n")
    return 0


def _cmd_classify(args, out):
    res = classify_minimal(_load(args.file))
    out.write(res.describe() + "\n")
    if isinstance(res, FamilyTag):
        for name in res.conditions:
            out.write(f"condition {name}: pass\n")
        return 0
    return 1


def _cmd_iso(args, out):
    same = is_isomorphic(_load(args.file1), _load(args.file2))
    out.write("isomorphic\n" if same else "not isomorphic\n")
    return 0 if same else 1


def _cmd_gen(args, out):
    kind = args.kind
    p = args.params
    try:
        if kind == "tsw":
            g = gen_tsw()
        elif kind == "wpp":
            if len(p) != 6:
                raise InvalidParams("wpp needs P S Q A B C")
            g = gen_wpp(*(int(x) for x in p), alpha=args.alpha, beta=args.beta)
        elif kind == "wpp-surface":
            if len(p) != 3:
                raise InvalidParams("wpp-surface needs P S Q")
            g = gen_wpp_surface(*(int(x) for x in p), alpha=args.alpha, A=args.area)
        elif kind == "cp1cp1":
            if len(p) != 4:
                raise InvalidParams("cp1cp1 needs C L M N")
            g = gen_cp1cp1_quot(*(int(x) for x in p), alpha=args.alpha, beta=args.beta,
                                gamma=args.gamma)
        else:
            if len(p) < 2:
                raise InvalidParams("ruled needs G B0 [A,B ...]")
            seif = SeifertInvariant(int(p[0]), int(p[1]), tuple(_pair(x) for x in p[2:]))
            g = gen_ruled(seif, s=args.s, alpha=args.alpha, A=args.area)
    except ValueError as exc:
        raise InvalidParams(str(exc)) from None
    out.write(emit(g))
    return 0


def _cmd_dot(args, out):
    out.write(emit_dot(_load(args.file)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbigraph", description="Exact labeled-multigraph engine "
                                 "for Hamiltonian circle actions on 4-dimensional orbifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph document")
    s.add_argument("file")
    s.set_defaults(func=_cmd_validate)

    s = sub.add_parser("verify", help="full consistency report with exact residuals")
    s.add_argument("file")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("blowup", help="apply a weighted blow-up")
    s.add_argument("file")
    s.add_argument("--vertex", required=True)
    s.add_argument("--variant", required=True, choices=["p1", "p2", "P1", "P2"])
    s.add_argument("--b1", type=int, required=True)
    s.add_argument("--b2", type=int, required=True)
    s.add_argument("--size", type=_frac, default=None)
    s.add_argument("--point", type=_pair, default=None, help="singular point M,L on a surface")
    s.add_argument("--edge", type=int, default=None)
    s.add_argument("--label", type=int, default=None)
    s.add_argument("--swap", action="store_true")
    s.set_defaults(func=_cmd_blowup)

    s = sub.add_parser("blowdown", help="blow down an edge, free sphere or fixed surface")
    s.add_argument("file")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--edge", type=int)
    grp.add_argument("--pair", nargs=2, metavar=("SOUTH", "NORTH"))
    grp.add_argument("--surface")
    s.set_defaults(func=_cmd_blowdown)

    for name, func, helptext in (("desing", _cmd_desing, "resolve all singular points"),
                                 ("minimalize", _cmd_minimalize, "blow down to a minimal graph")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--log", default=None)
        s.set_defaults(func=func)

    s = sub.add_parser("classify", help="match a minimal graph against the six families")
    s.add_argument("file")
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser("iso", help="test two graph documents for isomorphism")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=_cmd_iso)

    s = sub.add_parser("gen", help="emit a catalog graph")
    s.add_argument("kind", choices=["wpp", "wpp-surface", "cp1cp1", "ruled", "tsw"])
    s.add_argument("params", nargs="*")
    s.add_argument("--alpha", type=_frac, default=Fraction(0))
    s.add_argument("--beta", type=_frac, default=Fraction(1))
    s.add_argument("--gamma", type=_frac, default=Fraction(1))
    s.add_argument("--area", type=_frac, default=None)
    s.add_argument("--s", type=_frac, default=Fraction(1))
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("dot", help="Graphviz DOT export")
    s.add_argument("file")
    s.set_defaults(func=_cmd_dot)
    return ap


_USAGE_ERRORS = (InvalidSpec, InadmissibleSize, InvalidEdge, InvalidParams)


def main(argv=None, out=None) -> int:
    """Run the command line; returns the exit code (0 ok, 1 failed check, 2 usage error)."""
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "area", "x") is None and args.command == "gen" and args.kind == "wpp-surface":
        args.area = Fraction(1)
    try:
        return args.func(args, out)
    except _USAGE_ERRORS as exc:
        print(f"orbigraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OrbigraphError, OSError) as exc:
        print(f"orbigraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
