import pytest

from zkit.dsl import (BinOp, DLit, FracLit, IntLit, Pow, RatLit, parse,
                      parse_expression)
from zkit.errors import ScriptSyntaxError
from zkit.interp import Options, run_source


def test_tokenizer_positions():
    with pytest.raises(ScriptSyntaxError) as err:
        parse("ring R = Z;\ncheck D(2) ?? D(3);")
    assert err.value.line == 2


def test_parse_examples():
    script = parse("ring R = Fp(7)[x,y,z]/(x^3+y^3-z^3);")
    decl = script.statements[0]
    assert decl.ring.kind == "Fp" and decl.ring.modulus == 7
    assert decl.ring.variables == ("x", "y", "z")
    script = parse("latt u = D(x, y-1);")
    assert isinstance(script.statements[0].value, DLit)
    script = parse("check D(x^2) == D(x);")
    assert script.statements[0].op == "=="


def test_expression_shapes():
    e = parse_expression("1/2 * x + 3")
    assert isinstance(e, BinOp) and e.op == "+"
    assert isinstance(e.left.left, RatLit)
    e = parse_expression("x^3")
    assert isinstance(e, Pow) and e.exp == 3
    e = parse_expression("D(x) | D(y) & D(z)")
    assert e.op == "|" and e.right.op == "&"


def test_fraction_literals():
    script = parse("glue cover [2, 3] with [10 / 2^1, 15 / 3^1];")
    fr = script.statements[0].fractions[0]
    assert isinstance(fr, FracLit) and fr.exp == 1
    assert isinstance(fr.num, IntLit) and fr.num.value == 10
    # numerators with operators need no parens before the slash
    script = parse("glue cover [x] with [x^2 + x / x^1];")
    fr = script.statements[0].fractions[0]
    assert isinstance(fr.num, BinOp)


def test_syntax_errors():
    for bad in ["ring;", "check D(x) = D(y);", "elem = 3;",
                "glue cover [2] with [1 / 2];", 'verify noquotes;',
                "points R over;"]:
        with pytest.raises(ScriptSyntaxError):
            parse(bad)


def test_unknown_and_mismatch_are_contained():
    report = run_source("ring R = Z; check D(zz) == D(1);")
    assert report.results[1].status == "error"
    assert report.results[1].result["kind"] == "UnknownName"
    report = run_source("ring S = Q[x]; check D(x) == x;")
    assert report.results[1].status == "error"
    assert report.results[1].result["kind"] == "TypeMismatch"
    report = run_source("ring S = Q[x]; check x + D(x) == x;")
    assert report.results[1].status == "error"


def test_rational_literal_needs_q():
    report = run_source("ring R = Z; elem a = 1/2;")
    assert report.results[1].status == "error"
    assert report.results[1].result["kind"] == "TypeMismatch"


def test_bindings_and_scope():
    report = run_source("""
        ring S = Q[x];
        elem f = x^2;
        latt u = D(f);
        check u == D(x);
        ideal I = [f, x^3];
        radical-member x in I;
    """)
    assert [r.status for r in report.results] == ["ok"] * 6


def test_no_ring_declared():
    report = run_source("check D(2) == D(1);")
    assert report.results[0].status == "error"
    assert report.results[0].result["kind"] == "UnknownName"


def test_fail_fast():
    source = "ring R = Z; check D(2) == D(1); unimodular [3, 5];"
    report = run_source(source)
    assert len(report.results) == 3
    report = run_source(source, Options(fail_fast=True))
    assert len(report.results) == 2


def test_statement_timeout():
    source = ("ring F = Fp(7)[x,y,z]/(x^3 + y^3 - z^3);"
              "points F over Fp(7);")
    report = run_source(source, Options(timeout_ms=1))
    assert report.results[1].status == "error"
    assert "exceeded" in report.results[1].result["message"]
    assert report.exit_code == 2
