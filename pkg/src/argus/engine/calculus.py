"""Structural weakest (liberal) precondition calculus.

``wp`` is the may-reach transformer (some final state satisfies the
postcondition) and ``wlp`` the must-establish one (every final state does).
Both follow the structural laws; the only non-structural step is a frame whose
postcondition reads variables on both sides of the frame boundary inside a
single atom. That case is reduced exactly by splitting on the values of the
outside variables, which the frame cannot change, and is reported as a
semantic fallback.
"""
from __future__ import annotations

import itertools

from ..kernel.expr import (FALSE, TRUE, And, Bound, Exists, Expr, Forall, Implies, Lit, Not, Or,
                           WpTerm, children, coerce_down, coerce_up, conj, disj, eq_lit, free_bound,
                           free_paths, fresh_name, rebuild, subst, subst_bound, subst_many, unrest, usedby)
from ..kernel.prog import Abort, Assign, Choice, Frame, Guard, Havoc, Prog, Seq, Skip
from ..kernel.types import Schema, is_prefix

WP = "wp"
WLP = "wlp"
_DUAL = {WP: WLP, WLP: WP}

STRUCTURAL = "Structural"
SEMANTIC_FALLBACK = "SemanticFallback"


class _Calc:
    def __init__(self):
        self.fallback = False

    def run(self, kind: str, p: Prog, b: Expr, schema: Schema) -> Expr:
        t = type(p)
        if t is Skip:
            return b
        if t is Abort:
            return FALSE if kind == WP else TRUE
        if t is Seq:
            return self.run(kind, p.first, self.run(kind, p.second, b, schema), schema)
        if t is Guard:
            inner = self.run(kind, p.body, b, schema)
            return conj(p.cond, inner) if kind == WP else Implies(p.cond, inner)
        if t is Choice:
            l = self.run(kind, p.left, b, schema)
            r = self.run(kind, p.right, b, schema)
            return disj(l, r) if kind == WP else conj(l, r)
        if t is Assign:
            return subst(b, p.path, p.expr)
        if t is Havoc:
            return self._havoc(kind, p, b, schema)
        if t is Frame:
            return self._frame(kind, p, b, schema)
        raise TypeError(f"not a program: {p!r}")

    def _havoc(self, kind, p: Havoc, b, schema):
        ty = schema.leaf_type(p.path)
        v = fresh_name("v", free_bound(b) | free_bound(p.constraint))
        c = subst_bound(p.constraint, "new", Bound(v))
        post = subst(b, p.path, Bound(v))
        if kind == WP:
            return Exists(v, ty, conj(c, post))
        return Forall(v, ty, Implies(c, post))

    def _frame(self, kind, p: Frame, b, schema):
        a = p.ns
        inner = schema.subschema(a)
        if unrest(a, b):
            if kind == WP:
                return conj(b, coerce_up(self.run(WP, p.body, TRUE, inner), a))
            return disj(b, coerce_up(self.run(WLP, p.body, FALSE, inner), a))
        if usedby(a, b):
            return coerce_up(self.run(kind, p.body, coerce_down(b, a), inner), a)
        return self._mixed(kind, p, b, schema)

    def _mixed(self, kind, p: Frame, b, schema):
        """Frame postcondition reading both inside and outside the frame."""
        a = p.ns
        t = type(b)
        if t is Implies:
            return self._mixed(kind, p, Or((Not(b.left), b.right)), schema)
        if t is Not:
            return Not(self._frame(_DUAL[kind], p, b.arg, schema))
        # wp distributes over disjunction and wlp over conjunction; the other
        # connective only lets the outside-only part pass through the frame
        distributes = (t is Or and kind == WP) or (t is And and kind == WLP)
        if distributes:
            parts = tuple(self._frame(kind, p, x, schema) for x in b.args)
            return Or(parts) if t is Or else And(parts)
        if t in (And, Or):
            outside = [x for x in b.args if unrest(a, x)]
            rest = [x for x in b.args if not unrest(a, x)]
            if outside:
                join = conj if t is And else disj
                return join(*outside, self._frame(kind, p, join(*rest), schema))
        return self._split(kind, p, b, schema)

    def _split(self, kind, p: Frame, b, schema):
        self.fallback = True
        a = p.ns
        outs = sorted((x for x in free_paths(b) if not is_prefix(a, x)), key=schema.index)
        domains = [schema.leaf_type(x).values() for x in outs]
        cases = []
        for vals in itertools.product(*domains):
            sigma = {x: Lit(v) for x, v in zip(outs, vals)}
            pinned = conj(*(eq_lit(x, v) for x, v in zip(outs, vals)))
            cases.append(conj(pinned, self._frame(kind, p, subst_many(b, sigma), schema)))
        return disj(*cases)


def wp(p: Prog, b: Expr, schema: Schema) -> Expr:
    """Weakest precondition under which ``p`` may reach a state satisfying ``b``."""
    return _Calc().run(WP, p, b, schema)


def wlp(p: Prog, b: Expr, schema: Schema) -> Expr:
    """Weakest liberal precondition: every final state of ``p`` satisfies ``b``."""
    return _Calc().run(WLP, p, b, schema)


def transform(kind: str, p: Prog, b: Expr, schema: Schema) -> tuple:
    """``(formula, method)`` for ``wp`` or ``wlp``; method says whether a fallback split ran."""
    c = _Calc()
    out = c.run(kind, p, b, schema)
    return out, (SEMANTIC_FALLBACK if c.fallback else STRUCTURAL)


def expand_wp_terms(e: Expr, schema: Schema) -> tuple:
    """Replace embedded ``wp``/``wlp`` terms by their computed formulas.

    Returns ``(expr, method)``.
    """
    methods = []

    def go(x):
        if isinstance(x, WpTerm):
            f, m = transform(x.kind, x.prog, go(x.post), schema)
            methods.append(m)
            return f
        kids = children(x)
        if not kids:
            return x
        new = tuple(go(k) for k in kids)
        return rebuild(x, new)

    out = go(e)
    return out, (SEMANTIC_FALLBACK if SEMANTIC_FALLBACK in methods else STRUCTURAL)


def guard_distribute(p: Prog) -> Prog:
    """Push guards through nondeterministic choice: b -> (P [] Q) = (b -> P) [] (b -> Q)."""
    if isinstance(p, Choice):
        return Choice(guard_distribute(p.left), guard_distribute(p.right))
    if isinstance(p, Guard):
        body = guard_distribute(p.body)
        if isinstance(body, Choice):
            return Choice(guard_distribute(Guard(p.cond, body.left)),
                          guard_distribute(Guard(p.cond, body.right)))
        return Guard(p.cond, body)
    return p
