import json

import pytest
from hypothesis import given, settings

from ciu import fixtures as bundled
from ciu.io.parser import ParseError, SemanticError, format_document, parse, parse_expression
from ciu.io.report import emit, load, new_report, render
from ciu.io.runner import run
from ciu.ring import Ring, format_poly

from strategies import R3, polys

R9 = Ring(tuple(f"x{i}" for i in range(9)))
RT = Ring(("x", "y", "t"))


def test_parse_example_form():
    f = parse_expression("x0^3*x1^3*x7", R9)
    assert f == R9.monomial((3, 3, 0, 0, 0, 0, 0, 1, 0))


def test_parse_remark_form():
    x, y, t = RT.gens()
    assert parse_expression("x*y + x*t + y*t", RT) == x * y + x * t + y * t


def test_precedence():
    x, y, z = R3.gens()
    assert parse_expression("-x^2", R3) == -(x * x)
    assert parse_expression("2*(x+y)^2 - 3", R3) == 2 * (x + y) ** 2 - 3


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse("ring p=32003 vars=x,y,z order=grevlex\npoly bad = x + \n")
    err = info.value
    assert err.line == 2
    assert err.col >= len("poly bad = x +")


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError):
        parse_expression("2x", R3)
    with pytest.raises(ParseError):
        parse_expression("x y", R3)


def test_semantic_errors():
    with pytest.raises(SemanticError):
        parse("ring p=32003 vars=x,y,z\nideal I = (f)\n")
    with pytest.raises(SemanticError):
        parse("ring p=4 vars=x,y,z\n")
    with pytest.raises(SemanticError):
        parse("ring p=32003 vars=x,y,z\npoly f = x\npoly f = y\n")


def test_unknown_statement():
    with pytest.raises(ParseError):
        parse("ring p=32003 vars=x,y,z\nfoo bar\n")


@settings(max_examples=60, deadline=None)
@given(polys())
def test_render_parse_semantics(f):
    assert parse_expression(format_poly(f), R3) == f


@pytest.mark.parametrize("name", bundled.NAMES)
def test_fmt_is_idempotent(name):
    once = format_document(parse(bundled.text(name)))
    assert format_document(parse(once)) == once


def test_emit_round_trip():
    rep = run(parse(bundled.text("small")))
    data = emit(rep)
    assert emit(load(data)) == data
    assert data == emit(run(parse(bundled.text("small"))))
    assert json.loads(data)["format"] == "ciu-report"


def test_empty_report():
    rep = new_report()
    data = emit(rep)
    assert load(data) == {"format": "ciu-report", "version": 1, "sections": [], "hard_failures": []}
    assert "hard failures: 0" in render(rep)


def test_render_small():
    text = render(run(parse(bundled.text("small"))))
    assert "t=0   H=1" in text and "t=2   H=2" in text
    assert "gens: 2^2 3^3 / syz: 2 3 4^2" in text


def test_render_example_resolution():
    rep = run(parse(bundled.text("example")))
    sec = rep["sections"][0]
    assert sec["numerics"]["resolution"]["twists"] == "gens: 12^5 14^2 / syz: 13 15^5"
    assert sec["status"] == "ok"


def test_small_verdicts():
    sec = run(parse(bundled.text("small")))["sections"][0]
    assert all(v for k, v in sec["verdicts"].items() if isinstance(v, bool))
    assert sec["syzygy_residual"] == "0"


def test_remark_report():
    rep = run(parse(bundled.text("remark")))
    sec = rep["sections"][0]
    assert sec["hypothesis_ok"] is False
    assert sec["verdicts"]["equality_vs_reconstructed"] is True
    assert sec["verdicts"]["sums_agree"] is True
    assert sec["verdicts"]["ideal_equality"] is False
    assert not rep["hard_failures"]


def test_identities_task():
    doc = parse("ring p=32003 vars=x,y,z\ntask identities size=5 trials=200 seed=42\n")
    sec = run(doc)["sections"][0]
    assert sec["cayley"] == [5000, 5000]
    assert sec["heymans"] == [4000, 4000]
    assert sec["bordered"] == [1000, 1000]


def test_inverse_task():
    sec = run(parse(bundled.text("inverse")))["sections"][0]
    assert sec["status"] == "ok"
    assert sec["X1"] == ["x^2", "y^2"]


def test_inverse_gate_reported():
    text = bundled.text("inverse").replace("vector gamma = [1, 0, 0]", "vector gamma = [0, 0, 0]")
    sec = run(parse(text))["sections"][0]
    assert sec["status"] == "rejected" and sec["gate"] == "regular_sequence"


def test_hilbert_task():
    doc = parse("ring p=32003 vars=x,y,z\npoly a = x^2\npoly b = y^2\nideal I = (a, b)\ntask hilbert I=I\n")
    sec = run(doc)["sections"][0]
    assert sec["hf_artinian"] == [1, 2, 1]
    assert sec["degree"] == 4


def test_linkage_error_is_reported():
    doc = parse(
        "ring p=32003 vars=x,y,z\npoly a = x\npoly b = x*y\npoly c = z\npoly d = y\n"
        "ideal A = (a, b)\nideal B = (c, d)\ntask pipeline X1=A X2=B\n"
    )
    rep = run(doc)
    assert rep["sections"][0]["status"] == "error"
    assert not rep["hard_failures"]
