"""Pretty-printing in .gcl concrete syntax (reparses to the same structure)."""
from __future__ import annotations

from ..kernel.expr import (And, Bound, Eq, Exists, Forall, Implies, InSet, Leq, Lit, Lt, Member, Neq,
                           Not, Or, Plus, SetLit, SomeOf, The, Var, WpTerm)
from ..kernel.prog import Abort, Assign, Choice, Frame, Guard, Havoc, Seq, Skip
from ..kernel.types import BoolT, EnumT, IntT, OptionT, SetT, Some, format_path
from .module import EQUIV, HOARE, NMODS, VALID, GclModule

# binding strength, loosest first
_QUANT, _IFF, _IMP, _OR, _AND, _NOT, _CMP, _SUM, _ATOM = range(9)


def format_type(t) -> str:
    if isinstance(t, BoolT):
        return "bool"
    if isinstance(t, IntT):
        return f"int[{t.lo}..{t.hi}]"
    if isinstance(t, EnumT):
        return f"enum({', '.join(t.constructors)})"
    if isinstance(t, OptionT):
        return f"option {format_type(t.inner)}"
    if isinstance(t, SetT):
        return f"set({', '.join(t.inner.constructors)})"
    raise TypeError(f"not a type: {t!r}")


def _value(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "none"
    if isinstance(v, Some):
        return f"some({_value(v.value)})"
    if isinstance(v, frozenset):
        return "{" + ", ".join(sorted(_value(x) for x in v)) + "}"
    return str(v)


def format_expr(e, prec: int = _QUANT) -> str:
    text, own = _expr(e)
    return f"({text})" if own < prec else text


def _expr(e):
    t = type(e)
    if t is Lit:
        return _value(e.value), _ATOM
    if t is Var:
        return format_path(e.path), _ATOM
    if t is Bound:
        return e.name, _ATOM
    if t is And:
        return " and ".join(format_expr(a, _NOT) for a in e.args), _AND
    if t is Or:
        return " or ".join(format_expr(a, _AND) for a in e.args), _OR
    if t is Not:
        return f"not {format_expr(e.arg, _NOT)}", _NOT
    if t is Implies:
        return f"{format_expr(e.left, _OR)} => {format_expr(e.right, _IMP)}", _IMP
    if t in (Eq, Neq, Lt, Leq):
        op = {Eq: "=", Neq: "!=", Lt: "<", Leq: "<="}[t]
        return f"{format_expr(e.left, _SUM)} {op} {format_expr(e.right, _SUM)}", _CMP
    if t is Plus:
        return f"{format_expr(e.left, _SUM)} + {format_expr(e.right, _ATOM)}", _SUM
    if t is InSet:
        return f"{format_expr(e.elem, _SUM)} in {_value(e.values)}", _CMP
    if t is Member:
        return f"{format_expr(e.elem, _SUM)} in {format_expr(e.set, _ATOM)}", _CMP
    if t is SetLit:
        return "{" + ", ".join(format_expr(a) for a in e.elems) + "}", _ATOM
    if t is SomeOf:
        return f"some({format_expr(e.arg)})", _ATOM
    if t is The:
        return f"the({format_expr(e.arg)})", _ATOM
    if t in (Exists, Forall):
        kw = "exists" if t is Exists else "forall"
        return f"{kw} {e.name} : {format_type(e.ty)} . {format_expr(e.body)}", _QUANT
    if t is WpTerm:
        return f"{e.kind}({e.name}, {format_expr(e.post)})", _ATOM
    raise TypeError(f"not an expression: {e!r}")


_CHOICE, _SEQ, _GUARD, _PRIM = range(4)


def format_prog(p, prec: int = _CHOICE) -> str:
    text, own = _prog(p)
    return f"({text})" if own < prec else text


def _prog(p):
    t = type(p)
    if t is Skip:
        return "skip", _PRIM
    if t is Abort:
        return "abort", _PRIM
    if t is Seq:
        return f"{format_prog(p.first, _GUARD)} ; {format_prog(p.second, _SEQ)}", _SEQ
    if t is Choice:
        return f"{format_prog(p.left, _SEQ)} [] {format_prog(p.right, _CHOICE)}", _CHOICE
    if t is Guard:
        # a quantifier guard would swallow the arrow's left side only if unparenthesized
        return f"{format_expr(p.cond, _IFF)} -> {format_prog(p.body, _GUARD)}", _GUARD
    if t is Assign:
        return f"{format_path(p.path)} := {format_expr(p.expr)}", _PRIM
    if t is Frame:
        return f"frame {format_path(p.ns)} in ({format_prog(p.body)})", _PRIM
    if t is Havoc:
        return f"havoc {format_path(p.path)} where {format_expr(p.constraint, _IFF)}", _PRIM
    raise TypeError(f"not a program: {p!r}")


def format_state(schema, indent: str = "  ") -> list:
    lines = []
    open_ns: tuple = ()
    for path, ty in schema.leaves:
        ns = path[:-1]
        common = 0
        while common < min(len(ns), len(open_ns)) and ns[common] == open_ns[common]:
            common += 1
        for depth in range(len(open_ns), common, -1):
            lines.append(indent * depth + "}")
        for depth in range(common, len(ns)):
            lines.append(indent * (depth + 1) + f"ns {ns[depth]} {{")
        open_ns = ns
        lines.append(indent * (len(ns) + 1) + f"{path[-1]} : {format_type(ty)};")
    for depth in range(len(open_ns), 0, -1):
        lines.append(indent * depth + "}")
    return lines


def _scope(m: GclModule, name: str) -> str:
    s = m.scope_of(name)
    return f" @ {format_path(s)}" if s else ""


def format_obligation(ob) -> str:
    if ob.kind == HOARE:
        body = f"hoare {{ {format_expr(ob.pre)} }} {ob.prog_name} {{ {format_expr(ob.post)} }}"
    elif ob.kind == VALID:
        body = f"valid {format_expr(ob.goal)}"
    elif ob.kind == NMODS:
        vs = ", ".join(format_path(v) for v in ob.vars)
        body = f"nmods ({format_prog(ob.prog)}) {{ {vs} }}"
    elif ob.kind == EQUIV:
        body = f"equiv ({format_prog(ob.prog)}) ({format_prog(ob.other)})"
    else:
        raise ValueError(f"unknown obligation kind {ob.kind}")
    return f"obligation {ob.gid} : {body}"


def format_module(m: GclModule) -> str:
    """Whole-module text; named references appear expanded except in wp terms and hoare."""
    out = [f"gclmodule {m.name} {{", "state {"]
    out += format_state(m.schema)
    out.append("}")
    for name, p in m.progs.items():
        out.append(f"def {name}{_scope(m, name)} := {format_prog(p)}")
    for name, e in m.preds.items():
        out.append(f"pred {name}{_scope(m, name)} := {format_expr(e)}")
    for ob in m.obligations.values():
        out.append(format_obligation(ob))
    out.append("}")
    return "\n".join(out) + "\n"
