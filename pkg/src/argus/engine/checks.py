"""Verification checks returning verdicts: validity, Hoare triples, nmods, equivalence."""
from __future__ import annotations

from dataclasses import dataclass

from ..kernel.expr import (And, Bound, Eq, Expr, Forall, Implies, Var, coerce_down, conj, eval_expr,
                           free_paths, usedby)
from ..kernel.prog import Abort, Assign, Choice, Frame, Guard, Havoc, Prog, Seq, Skip, writes
from ..kernel.semantics import successors
from ..kernel.types import (DEFAULT_STATE_BOUND, Schema, State, StateSpaceTooLarge, format_path,
                            independent, is_prefix, states)
from .calculus import SEMANTIC_FALLBACK, STRUCTURAL, WLP, expand_wp_terms, transform
from .decide import first_model, is_valid

PASS = "Pass"
FAIL = "Fail"
ERROR = "Error"


@dataclass(frozen=True)
class Verdict:
    status: str
    method: str = STRUCTURAL
    counterexample: tuple | None = None  # (initial state, final state or None)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def describe(self) -> str:
        out = f"{self.status} ({self.method})"
        if self.message:
            out += f": {self.message}"
        if self.counterexample is not None:
            s, t = self.counterexample
            out += f"\n  state: {s!r}"
            if t is not None:
                out += f"\n  final: {t!r}"
        return out


def valid(e: Expr, schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> Verdict:
    """Pass iff ``e`` holds in every state; Fail carries the first falsifying state."""
    f, method = expand_wp_terms(e, schema)
    cex = is_valid(f, schema, bound)
    if cex is None:
        return Verdict(PASS, method)
    return Verdict(FAIL, method, (cex, None))


def hoare(pre: Expr, p: Prog, post: Expr, schema: Schema,
          bound: int = DEFAULT_STATE_BOUND) -> Verdict:
    """Partial correctness ``{pre} p {post}``, decided as ``pre => wlp(p, post)``."""
    pre, m1 = expand_wp_terms(pre, schema)
    post, m2 = expand_wp_terms(post, schema)
    w, m3 = transform(WLP, p, post, schema)
    method = SEMANTIC_FALLBACK if SEMANTIC_FALLBACK in (m1, m2, m3) else STRUCTURAL
    cex = is_valid(Implies(pre, w), schema, bound)
    if cex is None:
        return Verdict(PASS, method)
    bad = next((t for t in successors(p, cex) if not eval_expr(post, t)), None)
    return Verdict(FAIL, method, (cex, bad))


# -- modification predicate ---------------------------------------------------------

class _Structural:
    """The syntactic nmods rules, strengthened with the enclosing guard context.

    The context is a list of conjuncts known to hold whenever control reaches
    the current subprogram. If it is unsatisfiable the subprogram is never
    entered and behaves as abort, which modifies nothing.
    """

    def __init__(self, bound: int):
        self.bound = bound

    def holds(self, p: Prog, x: tuple, ctx: list, schema: Schema) -> bool:
        t = type(p)
        if t is Skip or t is Abort:
            return True
        if t is Seq:
            if not self.holds(p.first, x, ctx, schema):
                return False
            w = writes(p.first)
            keep = [c for c in ctx if free_paths(c).isdisjoint(w)]
            return self.holds(p.second, x, keep, schema)
        if t is Choice:
            return self.holds(p.left, x, ctx, schema) and self.holds(p.right, x, ctx, schema)
        if t is Guard:
            return self.holds(p.body, x, ctx + _conjuncts(p.cond), schema)
        if t is Assign or t is Havoc:
            if independent(x, p.path):
                return True
            return self._unreachable(ctx, schema)
        if t is Frame:
            if not is_prefix(p.ns, x):
                return True
            inner = [coerce_down(c, p.ns) for c in ctx if usedby(p.ns, c)]
            return self.holds(p.body, x[len(p.ns):], inner, schema.subschema(p.ns))
        raise TypeError(f"not a program: {p!r}")

    def _unreachable(self, ctx, schema) -> bool:
        if not ctx:
            return False
        try:
            return first_model(conj(*ctx), schema, self.bound) is None
        except StateSpaceTooLarge:
            return False


def _conjuncts(e: Expr) -> list:
    if isinstance(e, And):
        out = []
        for a in e.args:
            out.extend(_conjuncts(a))
        return out
    return [e]


def nmods_structural(p: Prog, x, schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> bool:
    """True when the syntactic rules alone show ``p`` leaves leaf ``x`` unchanged."""
    return _Structural(bound).holds(p, tuple(x), [], schema)


def nmods(p: Prog, vars, schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> Verdict:
    """``p`` changes none of ``vars`` on any transition."""
    vars = [tuple(v) for v in vars]
    for v in vars:
        if not schema.is_leaf(v):
            raise ValueError(f"nmods target {format_path(v)} is not a variable")
    pending = [v for v in vars if not nmods_structural(p, v, schema, bound)]
    if not pending:
        return Verdict(PASS, STRUCTURAL)
    if schema.cardinality <= bound:
        cex = _nmods_enumerate(p, pending, schema, bound)
    else:
        cex = _nmods_wlp(p, pending, schema, bound)
    if cex is None:
        return Verdict(PASS, SEMANTIC_FALLBACK)
    s, t = cex
    changed = [format_path(v) for v in pending if s[v] != t[v]]
    return Verdict(FAIL, SEMANTIC_FALLBACK, cex, f"modifies {', '.join(changed)}")


def _nmods_enumerate(p, vars, schema, bound):
    for s in states(schema, bound):
        for t in sorted(successors(p, s), key=State.sort_key):
            if any(s[v] != t[v] for v in vars):
                return s, t
    return None


def _nmods_wlp(p, vars, schema, bound):
    found = []
    for v in vars:
        ty = schema.leaf_type(v)
        keep = Eq(Var(v), Bound("old#"))
        w, _ = transform(WLP, p, keep, schema)
        s = is_valid(Forall("old#", ty, Implies(keep, w)), schema, bound)
        if s is not None:
            found.append(s)
    if not found:
        return None
    s = min(found, key=State.sort_key)
    t = min((t for t in successors(p, s) if any(s[v] != t[v] for v in vars)), key=State.sort_key)
    return s, t


# -- program equivalence ------------------------------------------------------------

def equiv(p: Prog, q: Prog, schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> Verdict:
    """Pass iff ``p`` and ``q`` denote the same relation; Fail gives a pair in exactly one."""
    for s in states(schema, bound):
        a, b = set(successors(p, s)), set(successors(q, s))
        if a != b:
            t = min(a ^ b, key=State.sort_key)
            side = "first" if t in a else "second"
            return Verdict(FAIL, SEMANTIC_FALLBACK, (s, t), f"transition only in the {side} program")
    return Verdict(PASS, SEMANTIC_FALLBACK)
