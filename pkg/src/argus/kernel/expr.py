"""First-order expressions over finite-typed states."""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Any, Callable

from .types import FiniteType, Path, SetT, Some, format_path, is_prefix


def node(cls):
    """Frozen dataclass whose structural hash is computed once and cached.

    Expression trees are used as memo keys by the decision procedure, so the
    default recursive dataclass hash would be paid on every lookup.
    """
    cls = dataclass(frozen=True)(cls)
    names = tuple(f.name for f in dataclasses.fields(cls))
    tag = cls.__name__

    def __hash__(self):
        d = self.__dict__
        h = d.get("_h")
        if h is None:
            h = hash((tag,) + tuple(getattr(self, n) for n in names))
            object.__setattr__(self, "_h", h)
        return h

    cls.__hash__ = __hash__
    return cls


class Expr:
    pass


@node
class Lit(Expr):
    value: Any
    # bool/int compare equal in Python; the tag keeps Lit(True) != Lit(1)
    tag: str = dataclasses.field(init=False, default="")

    def __post_init__(self):
        object.__setattr__(self, "tag", type(self.value).__name__)


@node
class Var(Expr):
    path: tuple


@node
class Bound(Expr):
    name: str


@node
class Eq(Expr):
    left: Expr
    right: Expr


@node
class Neq(Expr):
    left: Expr
    right: Expr


@node
class Lt(Expr):
    left: Expr
    right: Expr


@node
class Leq(Expr):
    left: Expr
    right: Expr


@node
class Plus(Expr):
    """Integer addition saturating at ``lo``/``hi`` (filled in by type checking)."""
    left: Expr
    right: Expr
    lo: int | None = None
    hi: int | None = None


@node
class And(Expr):
    args: tuple


@node
class Or(Expr):
    args: tuple


@node
class Not(Expr):
    arg: Expr


@node
class Implies(Expr):
    left: Expr
    right: Expr


@node
class InSet(Expr):
    """Membership of ``elem`` in a literal set of values."""
    elem: Expr
    values: frozenset


@node
class SomeOf(Expr):
    arg: Expr


@node
class The(Expr):
    """Extract an optional's value; ``default`` is returned for None."""
    arg: Expr
    default: Any = None


@node
class Exists(Expr):
    name: str
    ty: FiniteType
    body: Expr


@node
class Forall(Expr):
    name: str
    ty: FiniteType
    body: Expr


@node
class SetLit(Expr):
    elems: tuple


@node
class Member(Expr):
    elem: Expr
    set: Expr


@node
class WpTerm(Expr):
    """``wp(name, post)`` / ``wlp(name, post)`` embedded in an obligation goal."""
    kind: str
    name: str
    prog: Any
    post: Expr


TRUE = Lit(True)
FALSE = Lit(False)
NONE = Lit(None)

BINARY = (Eq, Neq, Lt, Leq, Implies)
BINDERS = (Exists, Forall)


def conj(*args: Expr) -> Expr:
    flat = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(*args: Expr) -> Expr:
    flat = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def eq_lit(path, value) -> Expr:
    return Eq(Var(tuple(path)), Lit(value))


def children(e: Expr) -> tuple:
    if isinstance(e, (Lit, Var, Bound)):
        return ()
    if isinstance(e, (And, Or)):
        return e.args
    if isinstance(e, BINARY) or isinstance(e, Plus):
        return (e.left, e.right)
    if isinstance(e, (Not, SomeOf, The)):
        return (e.arg,)
    if isinstance(e, InSet):
        return (e.elem,)
    if isinstance(e, BINDERS):
        return (e.body,)
    if isinstance(e, SetLit):
        return e.elems
    if isinstance(e, Member):
        return (e.elem, e.set)
    if isinstance(e, WpTerm):
        return (e.post,)
    raise TypeError(f"not an expression: {e!r}")


def rebuild(e: Expr, kids: tuple) -> Expr:
    """Same node as ``e`` with its children replaced (in ``children`` order)."""
    if isinstance(e, (Lit, Var, Bound)):
        return e
    if isinstance(e, And):
        return And(tuple(kids))
    if isinstance(e, Or):
        return Or(tuple(kids))
    if isinstance(e, Plus):
        return Plus(kids[0], kids[1], e.lo, e.hi)
    if isinstance(e, BINARY):
        return type(e)(kids[0], kids[1])
    if isinstance(e, Not):
        return Not(kids[0])
    if isinstance(e, SomeOf):
        return SomeOf(kids[0])
    if isinstance(e, The):
        return The(kids[0], e.default)
    if isinstance(e, InSet):
        return InSet(kids[0], e.values)
    if isinstance(e, BINDERS):
        return type(e)(e.name, e.ty, kids[0])
    if isinstance(e, SetLit):
        return SetLit(tuple(kids))
    if isinstance(e, Member):
        return Member(kids[0], kids[1])
    if isinstance(e, WpTerm):
        return WpTerm(e.kind, e.name, e.prog, kids[0])
    raise TypeError(f"not an expression: {e!r}")


# -- evaluation ---------------------------------------------------------------

class EvalError(Exception):
    pass


def eval_expr(e: Expr, s, binders: dict | None = None) -> Any:
    """Evaluate ``e`` in state ``s`` (anything indexable by path)."""
    env = binders or {}
    return _eval(e, s, env)


def _eval(e, s, env):
    t = type(e)
    if t is Lit:
        return e.value
    if t is Var:
        return s[e.path]
    if t is Bound:
        try:
            return env[e.name]
        except KeyError:
            raise EvalError(f"unbound name {e.name}") from None
    if t is And:
        return all(_eval(a, s, env) for a in e.args)
    if t is Or:
        return any(_eval(a, s, env) for a in e.args)
    if t is Not:
        return not _eval(e.arg, s, env)
    if t is Implies:
        return (not _eval(e.left, s, env)) or bool(_eval(e.right, s, env))
    if t is Eq:
        return _eval(e.left, s, env) == _eval(e.right, s, env)
    if t is Neq:
        return _eval(e.left, s, env) != _eval(e.right, s, env)
    if t is Lt:
        return _eval(e.left, s, env) < _eval(e.right, s, env)
    if t is Leq:
        return _eval(e.left, s, env) <= _eval(e.right, s, env)
    if t is Plus:
        return saturate(_eval(e.left, s, env) + _eval(e.right, s, env), e.lo, e.hi)
    if t is InSet:
        return _eval(e.elem, s, env) in e.values
    if t is SomeOf:
        return Some(_eval(e.arg, s, env))
    if t is The:
        v = _eval(e.arg, s, env)
        return v.value if isinstance(v, Some) else e.default
    if t is Exists:
        return any(_eval(e.body, s, {**env, e.name: v}) for v in e.ty.values())
    if t is Forall:
        return all(_eval(e.body, s, {**env, e.name: v}) for v in e.ty.values())
    if t is SetLit:
        return frozenset(_eval(a, s, env) for a in e.elems)
    if t is Member:
        return _eval(e.elem, s, env) in _eval(e.set, s, env)
    if t is WpTerm:
        raise EvalError("wp/wlp terms must be expanded before evaluation")
    raise TypeError(f"not an expression: {e!r}")


def saturate(v: int, lo, hi) -> int:
    if lo is not None and v < lo:
        return lo
    if hi is not None and v > hi:
        return hi
    return v


# -- variables ------------------------------------------------------------------

def free_paths(e: Expr) -> frozenset:
    """Leaf paths occurring in ``e`` (binder names are never paths)."""
    fp = e.__dict__.get("_fp")
    if fp is None:
        if type(e) is Var:
            fp = frozenset((e.path,))
        else:
            kids = children(e)
            if not kids:
                fp = frozenset()
            elif len(kids) == 1:
                fp = free_paths(kids[0])
            else:
                fp = frozenset().union(*(free_paths(k) for k in kids))
        object.__setattr__(e, "_fp", fp)
    return fp


def free_bound(e: Expr) -> frozenset:
    if type(e) is Bound:
        return frozenset((e.name,))
    if isinstance(e, BINDERS):
        return free_bound(e.body) - {e.name}
    out = frozenset()
    for k in children(e):
        out |= free_bound(k)
    return out


def unrest(a: Path, e: Expr) -> bool:
    """``e`` does not read any variable inside namespace ``a`` (syntactic check)."""
    a = tuple(a)
    return not any(is_prefix(a, p) for p in free_paths(e))


def usedby(a: Path, e: Expr) -> bool:
    """``e`` reads only variables inside namespace ``a``."""
    a = tuple(a)
    return all(is_prefix(a, p) for p in free_paths(e))


def map_vars(e: Expr, f: Callable[[tuple], Expr]) -> Expr:
    """Replace every ``Var(p)`` by ``f(p)``; ``f`` returning None keeps the variable."""
    if type(e) is Var:
        r = f(e.path)
        return e if r is None else r
    if not free_paths(e):
        return e
    kids = children(e)
    new = tuple(map_vars(k, f) for k in kids)
    if all(n is k for n, k in zip(new, kids)):
        return e
    return rebuild(e, new)


_fresh = itertools.count()


def fresh_name(base: str, avoid: frozenset) -> str:
    while True:
        n = f"{base}#{next(_fresh)}"
        if n not in avoid:
            return n


def subst(e: Expr, x, r: Expr) -> Expr:
    """Capture-avoiding substitution of variable ``x`` by ``r``."""
    return subst_many(e, {tuple(x): r})


def subst_many(e: Expr, sigma: dict) -> Expr:
    """Simultaneous substitution ``{path: expr}`` avoiding capture of bound names."""
    if not sigma:
        return e
    danger = frozenset().union(*(free_bound(r) for r in sigma.values()))
    return _subst(e, sigma, danger)


def _subst(e, sigma, danger):
    t = type(e)
    if t is Var:
        return sigma.get(e.path, e)
    if not (free_paths(e) & sigma.keys()):
        return e
    if isinstance(e, BINDERS) and e.name in danger:
        n = fresh_name(e.name.split("#")[0], danger | free_bound(e.body))
        body = _rename_bound(e.body, e.name, n)
        return t(n, e.ty, _subst(body, sigma, danger))
    return rebuild(e, tuple(_subst(k, sigma, danger) for k in children(e)))


def _rename_bound(e, old, new):
    if type(e) is Bound:
        return Bound(new) if e.name == old else e
    if isinstance(e, BINDERS) and e.name == old:
        return e
    kids = children(e)
    if not kids:
        return e
    return rebuild(e, tuple(_rename_bound(k, old, new) for k in kids))


def subst_bound(e: Expr, name: str, r: Expr) -> Expr:
    """Replace free occurrences of binder ``name`` by ``r`` (capture-avoiding)."""
    danger = free_bound(r)

    def go(x):
        if type(x) is Bound:
            return r if x.name == name else x
        if isinstance(x, BINDERS):
            if x.name == name:
                return x
            if x.name in danger:
                n = fresh_name(x.name.split("#")[0], danger | free_bound(x.body))
                return type(x)(n, x.ty, go(_rename_bound(x.body, x.name, n)))
        kids = children(x)
        if not kids:
            return x
        return rebuild(x, tuple(go(k) for k in kids))

    return go(e)


class NotUsedBy(Exception):
    def __init__(self, ns, paths):
        super().__init__(f"expression reads {', '.join(format_path(p) for p in sorted(paths))} "
                         f"outside namespace {format_path(ns)}")
        self.ns = ns
        self.paths = paths


def coerce_up(e: Expr, a: Path) -> Expr:
    """Grow the state space: prefix every variable with namespace ``a``."""
    a = tuple(a)
    if not a:
        return e
    return map_vars(e, lambda p: Var(a + p))


def coerce_down(e: Expr, a: Path) -> Expr:
    """Shrink the state space: strip namespace ``a`` from every variable."""
    a = tuple(a)
    outside = [p for p in free_paths(e) if not is_prefix(a, p)]
    if outside:
        raise NotUsedBy(a, outside)
    if not a:
        return e
    return map_vars(e, lambda p: Var(p[len(a):]))


def size(e: Expr) -> int:
    n = e.__dict__.get("_sz")
    if n is None:
        n = 1 + sum(size(k) for k in children(e))
        object.__setattr__(e, "_sz", n)
    return n


def set_type_values(t: SetT) -> tuple:
    return t.values()
