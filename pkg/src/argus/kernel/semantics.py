"""Relational semantics by explicit-state execution: the exact oracle."""
from __future__ import annotations

from .expr import eval_expr
from .prog import Abort, Assign, Choice, Frame, Guard, Havoc, Prog, Seq, Skip
from .types import DEFAULT_STATE_BOUND, Schema, State, states


def successors(p: Prog, s: State) -> tuple:
    """Final states of ``p`` from ``s``, duplicate-free, in a deterministic order."""
    return tuple(dict.fromkeys(_succ(p, s)))


def _succ(p, s):
    t = type(p)
    if t is Skip:
        yield s
    elif t is Abort:
        return
    elif t is Seq:
        mids = dict.fromkeys(_succ(p.first, s))
        for m in mids:
            yield from _succ(p.second, m)
    elif t is Guard:
        if eval_expr(p.cond, s):
            yield from _succ(p.body, s)
    elif t is Choice:
        yield from _succ(p.left, s)
        yield from _succ(p.right, s)
    elif t is Assign:
        yield s.set(p.path, eval_expr(p.expr, s))
    elif t is Havoc:
        ty = s.schema.leaf_type(p.path)
        for v in ty.values():
            if eval_expr(p.constraint, s, {"new": v}):
                yield s.set(p.path, v)
    elif t is Frame:
        inner = s.schema.subschema(p.ns)
        for u in _succ(p.body, s.project(p.ns, inner)):
            yield s.embed(p.ns, u)
    else:
        raise TypeError(f"not a program: {p!r}")


def denote(p: Prog, schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> frozenset:
    """The relation of ``p`` as a set of (initial, final) state pairs."""
    return frozenset((s, t) for s in states(schema, bound) for t in successors(p, s))


def relation(p: Prog, schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> dict:
    """``denote`` grouped by initial state, in enumeration order."""
    return {s: successors(p, s) for s in states(schema, bound)}
