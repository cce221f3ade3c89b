import io
from pathlib import Path

import pytest

from orbigraph.catalog import catalog_samples, gen_tsw
from orbigraph.cli import HEADER, emit, emit_dot, main, parse, parse_record
from orbigraph.errors import DocumentSyntaxError, SemanticError
from orbigraph.graph import is_isomorphic
from orbigraph.rewrite import BlowUpSpec, blow_up

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def tsw_file(tmp_path):
    p = tmp_path / "tsw.og"
    p.write_text(emit(gen_tsw()))
    return str(p)


def test_emit_parse_roundtrip(samples):
    for g in samples.values():
        text = emit(g)
        assert text.startswith(HEADER + "\n")
        h = parse(text)
        assert is_isomorphic(g, h)
        assert emit(h) == text


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DocumentSyntaxError) as exc:
        parse(HEADER + "\nvertex a point m=2 l=1\n")
    assert exc.value.line == 2
    with pytest.raises(DocumentSyntaxError):
        parse("vertex a point m=1 l=0 H=0\n")
    with pytest.raises(DocumentSyntaxError) as exc:
        parse(HEADER + "\nvertex a point m=1 l=0 H=0.5\n")
    assert exc.value.line == 2
    with pytest.raises(DocumentSyntaxError):
        parse(HEADER + "\nnode a\n")


def test_parse_semantic_errors():
    with pytest.raises(SemanticError):
        parse(HEADER + "\nvertex a point m=1 l=0 H=0\nvertex a point m=1 l=0 H=1\n")
    with pytest.raises(SemanticError):
        parse(HEADER + "\nvertex a point m=1 l=0 H=0\nedge a b k=2\n")
    with pytest.raises(SemanticError):
        parse(HEADER + "\nvertex a point m=1 l=0 H=0\n")


def test_comments_ignored():
    text = "# a comment\n" + emit(gen_tsw()) + "# trailing\n"
    assert is_isomorphic(parse(text), gen_tsw())


def test_golden_dot():
    assert emit_dot(gen_tsw()) == (GOLDEN / "tsw.dot").read_text()


def test_record_roundtrip(tsw):
    _, rec = blow_up(tsw, BlowUpSpec("south", "P1", 3, 1))
    assert parse_record(rec.describe()) == rec.spec


def test_cli_validate_and_verify(tsw_file):
    assert run("validate", tsw_file) == (0, "valid\n")
    code, out = run("verify", tsw_file)
    assert code == 0 and out.splitlines()[-1] == "result: pass"


def test_cli_blowup_blowdown(tsw_file, tmp_path):
    code, out = run("blowup", tsw_file, "--vertex", "v0", "--variant", "p1", "--b1", "3", "--b2", "1")
    assert code == 0 and "# up case=II" in out
    up = tmp_path / "up.og"
    up.write_text(out)
    g = parse(out)
    pair = sorted((v for v in g.isolated if v.m in (1, 3) and v.moment < 1 / 4),
                  key=lambda v: v.moment)
    code, out = run("blowdown", str(up), "--pair", pair[0].id, pair[1].id)
    assert code == 0 and is_isomorphic(parse(out), gen_tsw())


def test_cli_inadmissible_size_is_usage_error(tsw_file):
    code, _ = run("blowup", tsw_file, "--vertex", "v0", "--variant", "p1", "--b1", "3", "--b2", "1",
                  "--size", "1")
    assert code == 2


def test_cli_desing_matches_golden(tsw_file, tmp_path):
    log = tmp_path / "steps.log"
    code, out = run("desing", tsw_file, "--log", str(log))
    assert code == 0
    assert out.splitlines()[-1] == "# singular points: 0"
    assert is_isomorphic(parse(out), parse((GOLDEN / "tsw_desingularized.og").read_text()))
    assert len(log.read_text().splitlines()) == 7


def test_cli_minimalize_and_classify(tsw_file):
    code, out = run("minimalize", tsw_file)
    assert code == 0 and out.splitlines()[-1] == "# blow-downs: 0"
    code, out = run("classify", tsw_file)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("family C:")
    assert all(l.endswith(": pass") for l in lines[1:])


def test_cli_classify_not_minimal(tsw_file, tmp_path):
    _, out = run("blowup", tsw_file, "--vertex", "v1", "--variant", "p1", "--b1", "1", "--b2", "1")
    p = tmp_path / "b.og"
    p.write_text(out)
    code, _ = run("classify", str(p))
    assert code == 1


def test_cli_iso(tsw_file, tmp_path):
    other = tmp_path / "o.og"
    other.write_text(emit(catalog_samples()["cp2"]))
    assert run("iso", tsw_file, tsw_file) == (0, "isomorphic\n")
    assert run("iso", tsw_file, str(other)) == (1, "not isomorphic\n")


@pytest.mark.parametrize("argv,family", [
    (("gen", "tsw"), "C"),
    (("gen", "wpp", "2", "3", "5", "3", "2", "1"), "B"),
    (("gen", "wpp-surface", "3", "2", "5"), "II"),
    (("gen", "cp1cp1", "5", "2", "2", "1"), "A"),
    (("gen", "ruled", "1", "1", "3,1", "2,1", "--area", "5"), "III"),
])
def test_cli_gen_then_classify(argv, family, tmp_path):
    code, out = run(*argv)
    assert code == 0
    p = tmp_path / "g.og"
    p.write_text(out)
    code, out = run("classify", str(p))
    assert code == 0 and out.startswith(f"family {family}:")


def test_cli_bad_params(tmp_path):
    assert run("gen", "wpp", "2", "4", "5", "3", "2", "1")[0] == 2
    assert run("validate", str(tmp_path / "missing.og"))[0] == 1
    assert run("nonsense")[0] == 2


def test_cli_dot(tsw_file):
    code, out = run("dot", tsw_file)
    assert code == 0 and out == (GOLDEN / "tsw.dot").read_text()
