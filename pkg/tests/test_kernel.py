import pytest
from hypothesis import given, settings, strategies as st

from argus.kernel import (FALSE, TRUE, Abort, And, Assign, BoolT, Bound, Choice, EnumT, Eq, Exists, Frame,
                          GclTypeError, Guard, Havoc, IntT, Lit, NotUsedBy, OptionT, Plus, Schema,
                          SetT, Seq, Skip, Some, StateSpaceTooLarge, Var, coerce_down, coerce_up,
                          denote, elaborate_expr, elaborate_prog, eval_expr, free_paths, independent,
                          is_prefix, seq, states, subst, successors, writes)
from argus.kernel.prog import depth, flatten_choice, normalize

S = Schema.from_tree({"x": IntT(0, 3), "n": {"y": BoolT(), "s": SetT(EnumT(("a", "b")))},
                      "o": OptionT(EnumT(("p", "q")))})
X, Y = ("x",), ("n", "y")


def test_type_values_and_cardinality():
    assert IntT(0, 3).values() == (0, 1, 2, 3)
    assert len(SetT(EnumT(("a", "b"))).values()) == 4
    assert OptionT(BoolT()).values() == (None, Some(False), Some(True))
    assert S.cardinality == 4 * 2 * 4 * 3
    assert len(list(states(S))) == S.cardinality


def test_state_bound_is_enforced():
    with pytest.raises(StateSpaceTooLarge):
        list(states(S, bound=10))


def test_paths_and_namespaces():
    assert S.paths == (X, Y, ("n", "s"), ("o",))
    assert S.is_namespace(("n",)) and not S.is_leaf(("n",))
    assert S.subschema(("n",)).paths == (("y",), ("s",))
    assert is_prefix(("n",), Y) and not is_prefix(Y, ("n",))
    assert independent(X, Y) and not independent(("n",), Y)


def test_project_and_embed_round_trip():
    s = S.initial().set(Y, True)
    inner = S.subschema(("n",))
    t = s.project(("n",), inner)
    assert t[("y",)] is True
    assert s.embed(("n",), t) == s


def test_saturating_addition():
    p = elaborate_prog(seq(Assign(X, Plus(Var(X), Lit(3))), Assign(X, Plus(Var(X), Lit(3)))), S)
    (t,) = successors(p, S.initial())
    assert t[X] == 3


def test_typing_errors():
    with pytest.raises(GclTypeError):
        elaborate_expr(Eq(Var(X), Lit(True)), S)
    with pytest.raises(GclTypeError, match="unknown variable"):
        elaborate_expr(Var(("zz",)), S)


def test_substitution_avoids_capture():
    e = Exists("v", BoolT(), Eq(Bound("v"), Var(Y)))
    r = subst(e, Y, Bound("v"))
    assert r.name != "v"
    assert r.body.right == Bound("v")


def test_coercions():
    assert coerce_up(Var(("y",)), ("n",)) == Var(Y)
    assert coerce_down(Var(Y), ("n",)) == Var(("y",))
    with pytest.raises(NotUsedBy):
        coerce_down(Var(X), ("n",))


def test_program_semantics():
    s = S.initial()
    assert successors(Skip(), s) == (s,)
    assert successors(Abort(), s) == ()
    assert successors(Guard(FALSE, Skip()), s) == ()
    assert len(successors(Choice(Assign(X, Lit(1)), Assign(X, Lit(2))), s)) == 2
    assert len(successors(Havoc(X, TRUE), s)) == 4
    (t,) = successors(elaborate_prog(Frame(("n",), Assign(("y",), TRUE)), S), s)
    assert t[Y] is True and t[X] == s[X]


def test_writes_sees_through_frames():
    assert writes(Frame(("n",), Assign(("y",), TRUE))) == {Y}
    assert writes(Seq(Assign(X, Lit(1)), Guard(TRUE, Havoc(Y, TRUE)))) == {X, Y}
    assert writes(Skip()) == frozenset()


def test_seq_nests_right_and_choice_flattens():
    a = Assign(X, Lit(1))
    assert seq(Skip(), a, Abort()) == Seq(Skip(), Seq(a, Abort()))
    assert seq(a) == a
    c = normalize(Choice(Choice(Skip(), Abort()), Skip()))
    assert len(flatten_choice(c)) == 3
    assert depth(Seq(Skip(), Seq(Skip(), Skip()))) == 3


BOOLS = Schema.from_tree({"a": BoolT(), "b": BoolT()})
_atoms = st.sampled_from([Var(("a",)), Var(("b",)), TRUE, FALSE])
bool_exprs = st.recursive(_atoms, lambda kids: st.builds(lambda l, r: And((l, r)), kids, kids), max_leaves=6)


@settings(max_examples=60, deadline=None)
@given(bool_exprs)
def test_free_paths_bound_the_dependency(e):
    # two states agreeing on free_paths(e) evaluate e the same way
    fp = free_paths(e)
    for s in states(BOOLS):
        for t in states(BOOLS):
            if all(s[p] == t[p] for p in fp):
                assert eval_expr(e, s) == eval_expr(e, t)


@settings(max_examples=60, deadline=None)
@given(bool_exprs, st.sampled_from([TRUE, FALSE, Var(("b",))]))
def test_assignment_is_substitution(post, rhs):
    p = Assign(("a",), rhs)
    for s in states(BOOLS):
        (t,) = successors(p, s)
        assert eval_expr(post, t) == eval_expr(subst(post, ("a",), rhs), s)


def test_denote_counts_pairs():
    rel = denote(Havoc(("a",), TRUE), BOOLS)
    assert len(rel) == 8
