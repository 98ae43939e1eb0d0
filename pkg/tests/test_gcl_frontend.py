import random

import pytest

from gen import MIXED3, random_expr, random_prog

from argus.gclfront import EQUIV, HOARE, NMODS, VALID, format_expr, format_module, format_prog, parse_gcl
from argus.gclfront.lexer import GclLexError, tokenize
from argus.kernel import Frame, Var, WpTerm, elaborate_expr, elaborate_prog
from argus.kernel.prog import normalize

HEAD = "gclmodule M { state { x : int[0..3]; b : bool; ns n { y : bool; } } "


def _parse(body):
    return parse_gcl(HEAD + body + " }", "m.gcl")


def _codes(body):
    return [d.code for d in _parse(body)[1]]


def test_lexer_tokens_and_errors():
    toks = tokenize("x := y <=> z // gone\n", "t")
    assert [t.text for t in toks if t.text] == ["x", ":=", "y", "<=>", "z"]
    with pytest.raises(GclLexError):
        tokenize("x $ y", "t")


@pytest.mark.parametrize("body, code", [
    ("pred P := b $", "E001"),
    ("pred P := b and", "E001"),
    ("pred P := z", "E101"),
    ("obligation o : nmods (Q) { x }", "E101"),
    ("pred P := b def D := P", "E102"),
    ("pred P := x + b", "E102"),
    ("pred P @ n := y pred Q := P", "E102"),
    ("pred P := b pred P := true", "E103"),
])
def test_diagnostic_codes(body, code):
    assert code in _codes(body)


def test_errors_carry_positions():
    (d,) = _parse("pred P := z")[1]
    assert d.span.file == "m.gcl" and d.span.line == 1
    assert "unresolved name z" in d.message


def test_recovery_continues_after_an_error():
    m, diags = _parse("pred P := z pred Q := b")
    assert [d.code for d in diags] == ["E101"]
    assert "Q" in m.preds


def test_obligation_kinds():
    m, diags = _parse("""
        def Inc := x := x + 1
        def N @ n := y := not y
        obligation h : hoare { x = 0 } Inc { x = 1 }
        obligation v : valid wp(Inc, x >= 1)
        obligation m : nmods (Inc) { b, n.y }
        obligation e : equiv (frame n in (N ; N)) (skip)
    """)
    assert diags == []
    kinds = {g: ob.kind for g, ob in m.obligations.items()}
    assert kinds == {"h": HOARE, "v": VALID, "m": NMODS, "e": EQUIV}
    assert isinstance(m.obligations["v"].goal, WpTerm) and m.obligations["v"].goal.name == "Inc"
    assert m.obligations["m"].vars == (("b",), ("n", "y"))
    assert isinstance(m.obligations["e"].prog, Frame)
    assert m.scopes["N"] == ("n",)


def test_lift_of_scoped_predicate():
    m, diags = _parse("pred P @ n := y pred Q := lift(n, P)")
    assert diags == []
    assert m.preds["P"] == Var(("y",)) and m.preds["Q"] == Var(("n", "y"))


def test_module_round_trips_through_printer(corpus):
    for name in ("laws.gcl", "tokeneer_mini.gcl"):
        m, diags = parse_gcl((corpus / name).read_text())
        assert diags == []
        again, diags = parse_gcl(format_module(m))
        assert diags == [] and again == m


def test_printed_fragments_reparse():
    rng = random.Random(3)
    for _ in range(100):
        e = elaborate_expr(random_expr(rng, MIXED3, 3), MIXED3)
        p = elaborate_prog(random_prog(rng, MIXED3, 3), MIXED3)
        src = ("gclmodule R { state { x : bool; ns n { y : int[0..2]; c : enum(a, b); } } "
               f"pred P := {format_expr(e)} def D := {format_prog(p)} }}")
        m, diags = parse_gcl(src)
        assert diags == [], src
        assert m.preds["P"] == e and m.progs["D"] == normalize(p), src
