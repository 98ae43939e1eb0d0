import random

import pytest
from hypothesis import given, settings, strategies as st

from gen import MIXED3, may_reach, must_establish, random_case, random_expr, sat_set

from argus.engine import (ERROR, FAIL, PASS, SEMANTIC_FALLBACK, STRUCTURAL, equiv, first_model, hoare,
                          is_valid, nmods, nmods_structural, simplify, valid, wlp, wp)
from argus.engine.calculus import expand_wp_terms
from argus.kernel import (FALSE, TRUE, Abort, And, Assign, BoolT, Bound, Eq, Frame, Guard, Havoc, IntT, Leq, Lit,
                          Not, Or, Schema, Skip, StateSpaceTooLarge, Var, WpTerm, elaborate_expr,
                          elaborate_prog, eval_expr, states)

S = Schema.from_tree({"x": IntT(0, 3), "n": {"y": BoolT()}})
X, Y = ("x",), ("n", "y")


def test_wp_abort_and_skip():
    b = Eq(Var(X), Lit(1))
    assert sat_set(wp(Abort(), b, S), S) == frozenset()
    assert sat_set(wlp(Abort(), b, S), S) == frozenset(states(S))
    assert sat_set(wp(Skip(), b, S), S) == sat_set(b, S)


def test_wp_havoc_is_existential_and_wlp_universal():
    p = Havoc(X, Leq(Lit(2), Bound("new")))
    b = Eq(Var(X), Lit(3))
    assert sat_set(wp(p, b, S), S) == frozenset(states(S))
    assert sat_set(wlp(p, b, S), S) == frozenset()


def test_frame_lifts_inner_postcondition():
    p = elaborate_prog(Frame(("n",), Assign(("y",), Not(Var(("y",))))), S)
    assert sat_set(wp(p, Var(Y), S), S) == sat_set(Not(Var(Y)), S)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_calculus_against_oracle_random(seed):
    p, b = random_case(random.Random(seed), MIXED3, depth=4)
    assert sat_set(wp(p, b, MIXED3), MIXED3) == may_reach(p, b, MIXED3)
    assert sat_set(wlp(p, b, MIXED3), MIXED3) == must_establish(p, b, MIXED3)


def test_expand_wp_terms_replaces_named_terms():
    term = WpTerm("wp", "SetX", Assign(X, Lit(2)), Eq(Var(X), Lit(2)))
    e, _ = expand_wp_terms(term, S)
    assert sat_set(e, S) == frozenset(states(S))


def test_first_model_is_lexicographically_least():
    m = first_model(Eq(Var(X), Lit(2)), S)
    assert m[X] == 2 and m[Y] is False
    assert first_model(FALSE, S) is None


def test_is_valid_returns_a_counterexample():
    assert is_valid(Or((Var(Y), Not(Var(Y)))), S) is None
    cex = is_valid(Var(Y), S)
    assert cex is not None and not eval_expr(Var(Y), cex)


def test_budget_exhaustion_raises():
    # five pairwise distinct values drawn from four: unsatisfiable, but only after a search
    big = Schema.from_tree({f"v{i}": IntT(0, 3) for i in range(5)})
    vs = [Var((f"v{i}",)) for i in range(5)]
    distinct = And(tuple(Not(Eq(a, b)) for i, a in enumerate(vs) for b in vs[i + 1:]))
    assert first_model(distinct, big) is None
    with pytest.raises(StateSpaceTooLarge):
        first_model(distinct, big, budget=5)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_simplify_preserves_meaning(seed):
    e = elaborate_expr(random_expr(random.Random(seed), MIXED3, 3), MIXED3)
    f = simplify(e)
    for s in states(MIXED3):
        assert eval_expr(e, s) == eval_expr(f, s)


def test_verdicts():
    assert hoare(TRUE, Abort(), FALSE, S).status == PASS
    v = hoare(TRUE, Assign(X, Lit(1)), Eq(Var(X), Lit(2)), S)
    assert v.status == FAIL and v.method == STRUCTURAL
    s, t = v.counterexample
    assert t[X] == 1
    assert "Fail" in v.describe()
    assert valid(Or((Var(Y), Not(Var(Y)))), S).passed


def test_nmods_structural_and_fallback():
    assert nmods_structural(Assign(X, Lit(1)), Y, S)
    assert not nmods_structural(Assign(X, Lit(1)), X, S)
    # x := x writes x syntactically but never changes it
    v = nmods(Assign(X, Var(X)), [X], S)
    assert v.passed and v.method == SEMANTIC_FALLBACK
    v = nmods(Assign(X, Lit(1)), [X], S)
    assert v.status == FAIL and v.counterexample[0][X] != v.counterexample[1][X]


def test_nmods_unsatisfiable_guard_context():
    p = Guard(And((Var(Y), Not(Var(Y)))), Assign(Y, Lit(False)))
    assert nmods_structural(p, Y, S)
    assert nmods(p, [Y], S).method == STRUCTURAL


def test_equiv():
    assert equiv(Assign(X, Lit(1)), Assign(X, Lit(1)), S).passed
    v = equiv(Skip(), Abort(), S)
    assert v.status == FAIL and v.method == SEMANTIC_FALLBACK


def test_state_bound_gives_error_verdict_via_bridge():
    from argus.bridge import check_obligation
    from argus.gclfront import parse_gcl
    m, diags = parse_gcl("gclmodule M { state { x : int[0..3]; y : int[0..3]; } "
                         "obligation o : equiv (x := 1) (x := 2) }")
    assert not diags
    v = check_obligation(m.obligations["o"], m, bound=4)
    assert v.status == ERROR and "exceeds" in v.message
