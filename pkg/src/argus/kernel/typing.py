"""Type checking and elaboration of expressions and programs against a schema.

Elaboration fills in the information evaluation needs but the surface syntax
leaves implicit: saturation bounds of ``+`` and the default value of ``the``.
Constructor names, ``none`` and set literals are polymorphic; their type is
taken from the other side of the comparison they occur in.
"""
from __future__ import annotations

from dataclasses import dataclass

from .expr import (And, Bound, Eq, Exists, Expr, Forall, Implies, InSet, Leq, Lit, Lt, Member,
                   Neq, Not, Or, Plus, SetLit, SomeOf, The, Var, WpTerm)
from .prog import Abort, Assign, Choice, Frame, Guard, Havoc, Prog, Seq, Skip
from .types import (BoolT, EnumT, FiniteType, IntT, OptionT, Schema, SchemaError, SetT, Some,
                    format_path, format_value)


class GclTypeError(Exception):
    pass


@dataclass(frozen=True)
class _Poly:
    """Type of a literal whose finite type is fixed by context."""
    what: str  # "ctor", "none", "set", "int"
    detail: object = None

    def __str__(self):
        if self.what == "ctor":
            return f"constructor {self.detail}"
        if self.what == "int":
            return "integer"
        return {"none": "none", "set": "set literal", "some": "some(..)"}[self.what]


BOOL = BoolT()


def _compatible(actual, expected) -> bool:
    if isinstance(actual, IntT) and isinstance(expected, IntT):
        return True
    if isinstance(actual, OptionT) and isinstance(expected, OptionT):
        return _compatible(actual.inner, expected.inner)
    return actual == expected


def _literal_fits(v, t: FiniteType) -> bool:
    if isinstance(t, IntT):
        return isinstance(v, int) and not isinstance(v, bool)
    if isinstance(t, OptionT):
        return v is None or (isinstance(v, Some) and _literal_fits(v.value, t.inner))
    return t.contains(v)


class _Checker:
    def __init__(self, schema: Schema, binders: dict):
        self.schema = schema
        self.binders = dict(binders)

    def expr(self, e: Expr, expected=None):
        """Return ``(elaborated, type)``; ``type`` may be a _Poly when unconstrained."""
        t = type(e)
        if t is Lit:
            return self._lit(e, expected)
        if t is Var:
            if not self.schema.is_leaf(e.path):
                if self.schema.is_namespace(e.path):
                    raise GclTypeError(f"{format_path(e.path)} is a namespace, not a variable")
                raise GclTypeError(f"unknown variable {format_path(e.path)}")
            return e, self.schema.leaf_type(e.path)
        if t is Bound:
            if e.name not in self.binders:
                raise GclTypeError(f"unbound name {e.name}")
            return e, self.binders[e.name]
        if t in (And, Or):
            return t(tuple(self.boolean(a) for a in e.args)), BOOL
        if t is Not:
            return Not(self.boolean(e.arg)), BOOL
        if t is Implies:
            return Implies(self.boolean(e.left), self.boolean(e.right)), BOOL
        if t in (Eq, Neq):
            l, r = self._unify(e.left, e.right)
            return t(l, r), BOOL
        if t in (Lt, Leq):
            return t(self.integer(e.left), self.integer(e.right)), BOOL
        if t is Plus:
            return self._plus(e, expected)
        if t is InSet:
            el, ty = self.expr(e.elem)
            if isinstance(ty, _Poly):
                raise GclTypeError(f"cannot infer the type of {ty} in a membership test")
            for v in e.values:
                if not _literal_fits(v, ty):
                    raise GclTypeError(f"{format_value(v)} is not a value of {ty}")
            return InSet(el, e.values), BOOL
        if t is SomeOf:
            inner = expected.inner if isinstance(expected, OptionT) else None
            a, ta = self.expr(e.arg, inner)
            if isinstance(ta, _Poly):
                if inner is None:
                    return SomeOf(a), _Poly("some", ta)
                ta = inner
            # literal payloads are folded so both construction routes agree
            if isinstance(a, Lit):
                return Lit(Some(a.value)), OptionT(ta)
            return SomeOf(a), OptionT(ta)
        if t is The:
            a, ta = self.expr(e.arg)
            if not isinstance(ta, OptionT):
                raise GclTypeError(f"'the' needs an optional operand, got {ta}")
            return The(a, ta.inner.first), ta.inner
        if t in (Exists, Forall):
            saved = self.binders.get(e.name)
            self.binders[e.name] = e.ty
            try:
                body = self.boolean(e.body)
            finally:
                if saved is None:
                    del self.binders[e.name]
                else:
                    self.binders[e.name] = saved
            return t(e.name, e.ty, body), BOOL
        if t is SetLit:
            return self._setlit(e, expected)
        if t is Member:
            if type(e.set) is SetLit:
                el, te = self.expr(e.elem)
                if not isinstance(te, _Poly):
                    elems = tuple(self.check(a, te) for a in e.set.elems)
                    if all(isinstance(a, Lit) for a in elems):
                        return InSet(el, frozenset(a.value for a in elems)), BOOL
                    if not isinstance(te, EnumT):
                        raise GclTypeError("sets are only supported over enumerations")
                    return Member(el, SetLit(elems)), BOOL
            s, ts = self.expr(e.set)
            if isinstance(ts, _Poly):
                el, te = self.expr(e.elem)
                if not isinstance(te, EnumT):
                    raise GclTypeError("cannot infer the element type of a set literal")
                s, ts = self.expr(e.set, SetT(te))
                return _member(el, s), BOOL
            if not isinstance(ts, SetT):
                raise GclTypeError(f"'in' needs a set on the right, got {ts}")
            el, te = self.expr(e.elem, ts.inner)
            self._expect(te, ts.inner)
            return _member(el, s), BOOL
        if t is WpTerm:
            return WpTerm(e.kind, e.name, e.prog, self.boolean(e.post)), BOOL
        raise GclTypeError(f"not an expression: {e!r}")

    def boolean(self, e: Expr) -> Expr:
        out, t = self.expr(e, BOOL)
        self._expect(t, BOOL)
        return out

    def integer(self, e: Expr) -> Expr:
        out, t = self.expr(e)
        if not (isinstance(t, IntT) or (isinstance(t, _Poly) and t.what == "int")):
            raise GclTypeError(f"expected an integer, got {t}")
        return out

    def check(self, e: Expr, ty: FiniteType) -> Expr:
        out, t = self.expr(e, ty)
        self._expect(t, ty)
        return out

    def _expect(self, t, expected):
        if isinstance(t, _Poly):
            if t.what == "int" and isinstance(expected, IntT):
                return
            raise GclTypeError(f"{t} does not have type {expected}")
        if not _compatible(t, expected):
            raise GclTypeError(f"expected {expected}, got {t}")

    def _lit(self, e: Lit, expected):
        v = e.value
        if isinstance(v, bool):
            return e, BOOL
        if isinstance(v, int):
            return e, (expected if isinstance(expected, IntT) else _Poly("int", v))
        if expected is not None:
            if not _literal_fits(v, expected):
                raise GclTypeError(f"{format_value(v)} is not a value of {expected}")
            return e, expected
        if isinstance(v, str):
            return e, _Poly("ctor", v)
        if v is None:
            return e, _Poly("none")
        if isinstance(v, frozenset):
            return e, _Poly("set", v)
        return e, _Poly("some", v)

    def _unify(self, left: Expr, right: Expr):
        l, tl = self.expr(left)
        if isinstance(tl, _Poly) and tl.what != "int":
            r, tr = self.expr(right)
            if isinstance(tr, _Poly):
                if tr.what == "int" and tl.what == "int":
                    return l, r
                raise GclTypeError(f"cannot infer a type for comparing {tl} with {tr}")
            l, tl = self.expr(left, tr)
            self._expect(tl, tr)
            return l, r
        if isinstance(tl, _Poly):
            r, tr = self.expr(right)
            if not (isinstance(tr, IntT) or isinstance(tr, _Poly) and tr.what == "int"):
                raise GclTypeError(f"cannot compare integer with {tr}")
            return l, r
        r, tr = self.expr(right, tl)
        self._expect(tr, tl)
        return l, r

    def _plus(self, e: Plus, expected):
        l, tl = self.expr(e.left)
        r, tr = self.expr(e.right)
        for t in (tl, tr):
            if not (isinstance(t, IntT) or isinstance(t, _Poly) and t.what == "int"):
                raise GclTypeError(f"'+' needs integer operands, got {t}")
        ty = tl if isinstance(tl, IntT) else tr if isinstance(tr, IntT) else expected
        if not isinstance(ty, IntT):
            if e.lo is not None:
                ty = IntT(e.lo, e.hi)
            else:
                return Plus(l, r, e.lo, e.hi), _Poly("int")
        return Plus(l, r, ty.lo, ty.hi), ty

    def _setlit(self, e: SetLit, expected):
        if isinstance(expected, SetT):
            return _setlit(tuple(self.check(a, expected.inner) for a in e.elems)), expected
        inner = None
        for a in e.elems:
            _, ta = self.expr(a)
            if not isinstance(ta, _Poly):
                inner = ta
                break
        if inner is None:
            return e, _Poly("set")
        if not isinstance(inner, EnumT):
            raise GclTypeError("sets are only supported over enumerations")
        return _setlit(tuple(self.check(a, inner) for a in e.elems)), SetT(inner)


def _setlit(elems):
    if all(isinstance(a, Lit) for a in elems):
        return Lit(frozenset(a.value for a in elems))
    return SetLit(elems)


def _member(el, s):
    if isinstance(s, Lit):
        return InSet(el, s.value)
    return Member(el, s)


def elaborate_expr(e: Expr, schema: Schema, binders: dict | None = None) -> Expr:
    """Type-check a Boolean expression and return its elaborated form."""
    return _Checker(schema, binders or {}).boolean(e)


def type_of(e: Expr, schema: Schema, binders: dict | None = None):
    return _Checker(schema, binders or {}).expr(e)[1]


def elaborate_prog(p: Prog, schema: Schema) -> Prog:
    """Type-check ``p`` against ``schema`` and return its elaborated form."""
    t = type(p)
    if t in (Skip, Abort):
        return p
    if t is Seq:
        return Seq(elaborate_prog(p.first, schema), elaborate_prog(p.second, schema))
    if t is Choice:
        return Choice(elaborate_prog(p.left, schema), elaborate_prog(p.right, schema))
    if t is Guard:
        return Guard(elaborate_expr(p.cond, schema), elaborate_prog(p.body, schema))
    if t is Assign:
        ty = _leaf(schema, p.path, "assign to")
        e = _Checker(schema, {}).check(p.expr, ty)
        if isinstance(p.expr, Lit) and not ty.contains(p.expr.value):
            raise GclTypeError(f"{format_value(p.expr.value)} is out of range for {ty}")
        return Assign(p.path, e)
    if t is Havoc:
        ty = _leaf(schema, p.path, "havoc")
        return Havoc(p.path, elaborate_expr(p.constraint, schema, {"new": ty}))
    if t is Frame:
        if not p.ns or not schema.is_namespace(p.ns):
            raise GclTypeError(f"frame target {format_path(p.ns) or '()'} is not a namespace")
        try:
            inner = schema.subschema(p.ns)
        except SchemaError as exc:
            raise GclTypeError(str(exc)) from None
        return Frame(p.ns, elaborate_prog(p.body, inner))
    raise GclTypeError(f"not a program: {p!r}")


def _leaf(schema: Schema, path, what) -> FiniteType:
    if not schema.is_leaf(path):
        raise GclTypeError(f"cannot {what} {format_path(path)}: not a variable")
    return schema.leaf_type(path)
