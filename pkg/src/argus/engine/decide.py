"""Exact validity checking over finite schemas.

``first_model`` returns the least satisfying state in the same lexicographic
order ``states`` enumerates, without visiting every state. It combines partial
evaluation, unit propagation on equations, splitting into variable-disjoint
components, case splitting on large disjunctions, and branching on the
earliest unassigned variable. Each step preserves the exact set of models, so
the answer coincides with a scan of the enumeration.
"""
from __future__ import annotations

from ..kernel.expr import (FALSE, TRUE, And, Bound, Eq, Exists, Expr, Forall, Implies, InSet, Leq, Lit,
                           Lt, Member, Neq, Not, Or, Plus, SetLit, SomeOf, The, Var, conj, free_bound, free_paths, saturate, size, subst_bound)
from ..kernel.types import DEFAULT_STATE_BOUND, Schema, Some, State, StateSpaceTooLarge

# quantifiers over domains up to this size are expanded into connectives
EXPAND_LIMIT = 64
# a disjunctive conjunct this large is case-split instead of branched through
DISTRIBUTE_SIZE = 40


def _lit(v) -> Lit:
    if v is True:
        return TRUE
    if v is False:
        return FALSE
    return Lit(v)


def _is_bool_lit(e) -> bool:
    return type(e) is Lit and e.tag == "bool"


def simplify(e: Expr, env: dict | None = None) -> Expr:
    """Partially evaluate ``e`` under the variable assignment ``env``.

    The result is in negation normal form without implications. With a
    non-empty ``env`` only subterms reading an assigned variable are
    revisited, so ``e`` should itself be a result of ``simplify``.
    """
    return _Simplifier(env or {}).run(e)


class _Simplifier:
    def __init__(self, env: dict):
        self.env = env
        self.incremental = bool(env)
        self.memo = {}

    def run(self, e):
        if self.incremental and free_paths(e).isdisjoint(self.env):
            return e
        r = self.memo.get(e)
        if r is None:
            r = self.memo[e] = self._simp(e)
        return r

    def _simp(self, e):
        t = type(e)
        if t is Lit or t is Bound:
            return e
        if t is Var:
            if e.path in self.env:
                return _lit(self.env[e.path])
            return e
        if t is And:
            return self._and([self.run(a) for a in e.args])
        if t is Or:
            return self._or([self.run(a) for a in e.args])
        if t is Not:
            return self._not(self.run(e.arg))
        if t is Implies:
            return self._or([self._not(self.run(e.left)), self.run(e.right)])
        if t is Eq:
            return self._eq(self.run(e.left), self.run(e.right))
        if t is Neq:
            return self._not(self._eq(self.run(e.left), self.run(e.right)))
        if t is Lt or t is Leq:
            l, r = self.run(e.left), self.run(e.right)
            if type(l) is Lit and type(r) is Lit:
                return _lit(l.value < r.value if t is Lt else l.value <= r.value)
            return t(l, r)
        if t is Plus:
            l, r = self.run(e.left), self.run(e.right)
            if type(l) is Lit and type(r) is Lit:
                return Lit(saturate(l.value + r.value, e.lo, e.hi))
            return Plus(l, r, e.lo, e.hi)
        if t is InSet:
            el = self.run(e.elem)
            if type(el) is Lit:
                return _lit(el.value in e.values)
            if not e.values:
                return FALSE
            return InSet(el, e.values)
        if t is SomeOf:
            a = self.run(e.arg)
            return Lit(Some(a.value)) if type(a) is Lit else SomeOf(a)
        if t is The:
            a = self.run(e.arg)
            if type(a) is Lit:
                return _lit(a.value.value if isinstance(a.value, Some) else e.default)
            if type(a) is SomeOf:
                return a.arg
            return The(a, e.default)
        if t is SetLit:
            elems = tuple(self.run(a) for a in e.elems)
            if all(type(a) is Lit for a in elems):
                return Lit(frozenset(a.value for a in elems))
            return SetLit(elems)
        if t is Member:
            el, s = self.run(e.elem), self.run(e.set)
            if type(s) is Lit:
                if type(el) is Lit:
                    return _lit(el.value in s.value)
                return InSet(el, s.value) if s.value else FALSE
            return Member(el, s)
        if t is Exists or t is Forall:
            return self._quant(e)
        raise TypeError(f"cannot simplify {e!r}")

    def _and(self, args):
        out = []
        seen = set()
        for a in args:
            if a is TRUE or (_is_bool_lit(a) and a.value):
                continue
            if _is_bool_lit(a):
                return FALSE
            parts = a.args if type(a) is And else (a,)
            for x in parts:
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        if not out:
            return TRUE
        if len(out) == 1:
            return out[0]
        return And(tuple(out))

    def _or(self, args):
        out = []
        seen = set()
        for a in args:
            if _is_bool_lit(a):
                if a.value:
                    return TRUE
                continue
            parts = a.args if type(a) is Or else (a,)
            for x in parts:
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        if not out:
            return FALSE
        if len(out) == 1:
            return out[0]
        return Or(tuple(out))

    def _not(self, a):
        t = type(a)
        if t is Lit:
            return _lit(not a.value)
        if t is Not:
            return a.arg
        if t is And:
            return self._or([self._not(x) for x in a.args])
        if t is Or:
            return self._and([self._not(x) for x in a.args])
        if t is Neq:
            return Eq(a.left, a.right)
        if t is Eq:
            return Neq(a.left, a.right)
        if t is Lt:
            return Leq(a.right, a.left)
        if t is Leq:
            return Lt(a.right, a.left)
        if t is Exists:
            return Forall(a.name, a.ty, self._not(a.body))
        if t is Forall:
            return Exists(a.name, a.ty, self._not(a.body))
        return Not(a)

    def _eq(self, l, r):
        tl, tr = type(l), type(r)
        if tl is Lit and tr is Lit:
            return _lit(l.value == r.value)
        if l == r:
            return TRUE
        if tl is Lit and tr is not Lit:
            l, r, tl, tr = r, l, tr, tl
        if tr is Lit:
            if r.tag == "bool":
                return l if r.value else self._not(l)
            if tl is SomeOf:
                if r.value is None:
                    return FALSE
                return self._eq(l.arg, _lit(r.value.value))
        if tl is SomeOf and tr is SomeOf:
            return self._eq(l.arg, r.arg)
        return Eq(l, r)

    def _quant(self, e):
        body = self.run(e.body)
        if _is_bool_lit(body):
            return body  # finite types are non-empty
        if e.name not in free_bound(body):
            return body
        exists = type(e) is Exists
        if not free_paths(body) or e.ty.cardinality <= EXPAND_LIMIT:
            inst = _Simplifier({})
            parts = [inst.run(subst_bound(body, e.name, _lit(v))) for v in e.ty.values()]
            return self._or(parts) if exists else self._and(parts)
        return type(e)(e.name, e.ty, body)


# -- model search ---------------------------------------------------------------

class Solver:
    """Lexicographically least models of simplified formulas over one schema."""

    def __init__(self, schema: Schema, budget: int = DEFAULT_STATE_BOUND):
        self.schema = schema
        self.budget = budget
        self.nodes = 0
        self.memo = {}

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise StateSpaceTooLarge(self.schema.cardinality, self.budget)

    def model(self, f: Expr):
        """Least partial model of ``f`` (unlisted variables take their first value), or None."""
        if type(f) is Lit:
            return {} if f.value else None
        r = self.memo.get(f, _MISSING)
        if r is _MISSING:
            self._tick()
            r = self.memo[f] = self._solve(f)
        return r

    def _index(self, p):
        return self.schema.index(p)

    def _key(self, m: dict, paths) -> tuple:
        return tuple(self.schema.leaf_type(p).rank(m[p]) if p in m else 0 for p in paths)

    def _least(self, models, paths):
        best = None
        best_key = None
        order = sorted(paths, key=self._index)
        for m in models:
            if m is None:
                continue
            k = self._key(m, order)
            if best is None or k < best_key:
                best, best_key = m, k
        return best

    def _solve(self, f):
        if type(f) is And:
            units = _units(f.args)
            if any(not self.schema.leaf_type(p).contains(v) for p, v in units.items()):
                return None
            if units:
                m = self.model(simplify(f, units))
                return None if m is None else {**units, **m}
            groups = _components(f.args)
            if len(groups) > 1:
                out = {}
                for g in groups:
                    m = self.model(simplify(conj(*g)) if len(g) > 1 else g[0])
                    if m is None:
                        return None
                    out.update(m)
                return out
            big = max((a for a in f.args if type(a) is Or), key=size, default=None)
            if big is not None and size(big) >= DISTRIBUTE_SIZE:
                rest = [a for a in f.args if a is not big]
                cases = [simplify(conj(*rest, d)) for d in big.args]
                return self._least((self.model(c) for c in cases), free_paths(f))
        if type(f) is Or:
            return self._least((self.model(d) for d in f.args), free_paths(f))
        unit = _unit(f)
        if unit is not None:
            return {unit[0]: unit[1]} if self.schema.leaf_type(unit[0]).contains(unit[1]) else None
        x = min(free_paths(f), key=self._index)
        for v in self.schema.leaf_type(x).values():
            m = self.model(simplify(f, {x: v}))
            if m is not None:
                return {x: v, **m}
        return None


_MISSING = object()


def _unit(a):
    """``(path, value)`` if ``a`` pins one variable to one value."""
    t = type(a)
    if t is Var:
        return a.path, True
    if t is Not and type(a.arg) is Var:
        return a.arg.path, False
    if t is Eq:
        if type(a.left) is Var and type(a.right) is Lit:
            return a.left.path, a.right.value
        if type(a.right) is Var and type(a.left) is Lit:
            return a.right.path, a.left.value
    if t is InSet and type(a.elem) is Var and len(a.values) == 1:
        return a.elem.path, next(iter(a.values))
    return None


def _units(args) -> dict:
    out = {}
    for a in args:
        u = _unit(a)
        if u is not None and u[0] not in out:
            out[u[0]] = u[1]
    return out


def _components(args) -> list:
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in args:
        ps = list(free_paths(a))
        for p in ps:
            parent.setdefault(p, p)
        for p in ps[1:]:
            ra, rb = find(ps[0]), find(p)
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for a in args:
        ps = free_paths(a)
        key = find(next(iter(ps))) if ps else None
        groups.setdefault(key, []).append(a)
    return list(groups.values())


def first_model(e: Expr, schema: Schema, budget: int = DEFAULT_STATE_BOUND) -> State | None:
    """The first state in enumeration order satisfying ``e``, or None."""
    m = Solver(schema, budget).model(simplify(e))
    if m is None:
        return None
    return State(schema, tuple(m.get(p, t.first) for p, t in schema.leaves))


def is_valid(e: Expr, schema: Schema, budget: int = DEFAULT_STATE_BOUND) -> State | None:
    """None when ``e`` holds everywhere, else the first falsifying state."""
    return first_model(Not(e), schema, budget)


def equivalent(a: Expr, b: Expr, schema: Schema, budget: int = DEFAULT_STATE_BOUND) -> State | None:
    """None when ``a`` and ``b`` agree on every state, else the first state where they differ."""
    return first_model(Or((And((a, Not(b))), And((Not(a), b)))), schema, budget)
