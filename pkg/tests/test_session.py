import pathlib

import pytest

from regseq.errors import ParseError
from regseq.polycore import GF, QQ
from regseq.session import Session, parse_session

FIXTURES = sorted(pathlib.Path(__file__).parent.joinpath("fixtures").glob("*.rs"))

EXAMPLE = "ring Q[x,y,z] order grevlex; module M = coker [[y*(x-1), y*z]]; seq f = [z, x];"


def test_example_session():
    s = parse_session(EXAMPLE)
    assert s.ring.variables == ("x", "y", "z") and s.ring.field == QQ
    M = s.modules["M"]
    assert M.rank == 1 and M.to_json() == [["x*y - y", "y*z"]]
    assert [str(p) for p in s.sequences["f"]] == ["z", "x"]
    assert s.commands == []


def test_empty_session():
    s = parse_session("")
    assert s.ring is None and not s.names() and s.commands == []
    assert parse_session("  # only a comment\n\n").to_json() == Session().to_json()


def test_unknown_variable_diagnostic():
    with pytest.raises(ParseError, match="unknown variable w") as info:
        parse_session("ring Q[x,y];\nseq f = [w];")
    assert (info.value.line, info.value.column) == (2, 10)
    with pytest.raises(ParseError) as info:
        parse_session("ring Q[x,y];\nseq f = [x, y + w^2];")
    assert (info.value.line, info.value.column) == (2, 17)


@pytest.mark.parametrize("text,needle", [
    ("ring Q[x,y];\nmodule M = coker [[x - 1]] graded;", "inhomogeneous"),
    ("ring Q[x,y];\nseq f = [x]\nseq g = [y];", "expected"),
    ("seq f = [x];", "no ring"),
    ("ring Q[x];\nseq f = [x];\nideal f = [x];", "already declared"),
    ("ring Q[x];\nfrobnicate f;", "unknown statement"),
    ("ring Q[x];\nmodule M = coker [[x], [x, x]];", "differ in length"),
    ("ring Q[x];\nseq f = [x;", "unbalanced"),
    ("ring GF(100)[x];", "prime"),
    ("ring Q[x];\noption field q;", "precede"),
])
def test_diagnostics(text, needle):
    with pytest.raises(ParseError, match=needle) as info:
        parse_session(text)
    assert info.value.line is not None and info.value.column is not None


def test_field_override_and_options():
    s = parse_session(EXAMPLE, field=GF(32003))
    assert s.ring.field == GF(32003)
    s = parse_session("option field gf:101;\noption degree-cap 20;\noption strict;\nring Q[x];")
    assert s.ring.field == GF(101)
    assert s.options == {"field": "gf:101", "degree-cap": 20, "strict": True}
    s = parse_session("ring GF(7)[a, b] order lex;")
    assert s.ring.field == GF(7) and str(s.ring.order) == "lex"


def test_graded_shifts_and_free():
    s = parse_session("ring Q[x,y];\nmodule M = coker [[x, y], [0, x]] graded (0, 0);\n"
                      "module F = free 2 graded;\nmodule G = free 1;")
    assert s.modules["M"].shifts == (0, 0)
    assert s.modules["F"].is_free() and s.modules["F"].shifts == (0, 0)
    assert s.modules["G"].shifts is None


def test_commands_drop_fillers():
    s = parse_session(EXAMPLE + "\ncheck f on M;\nlocal-depth M at p;")
    assert [(c.verb, c.args, c.line) for c in s.commands] == [
        ("check", ["f", "M"], 2), ("local-depth", ["M", "p"], 3)]


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_round_trips(path):
    s = parse_session(path.read_text())
    data = s.to_json()
    assert Session.from_json(data).to_json() == data
    assert parse_session(s.to_text()).to_json() == data
