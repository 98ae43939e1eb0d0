"""Program and expression generators plus the relational oracles used by the tests."""
from __future__ import annotations

import itertools
import random

from argus.kernel import (FALSE, TRUE, And, Assign, Abort, BoolT, Bound, Choice, EnumT, Eq, Frame, Guard,
                          Havoc, Implies, IntT, Leq, Lit, Neq, Not, Or, Plus, Schema, Seq, Skip, Var,
                          elaborate_expr, elaborate_prog, eval_expr, states, successors)

X = ("x",)
Y = ("n", "y")

# two Booleans, one of them inside a namespace so frames are exercised
BOOL2 = Schema.from_tree({"x": BoolT(), "n": {"y": BoolT()}})
# three variables of mixed type
MIXED3 = Schema.from_tree({"x": BoolT(), "n": {"y": IntT(0, 2), "c": EnumT(("a", "b"))}})


# -- oracles --------------------------------------------------------------------------

def transitions(p, schema) -> dict:
    return {s: successors(p, s) for s in states(schema)}


def may_reach(p, b, schema, table=None) -> frozenset:
    """States from which some run of ``p`` ends in a state satisfying ``b``."""
    table = table or transitions(p, schema)
    return frozenset(s for s, ts in table.items() if any(eval_expr(b, t) for t in ts))


def must_establish(p, b, schema, table=None) -> frozenset:
    """States from which every run of ``p`` ends in ``b`` (vacuously when there are none)."""
    table = table or transitions(p, schema)
    return frozenset(s for s, ts in table.items() if all(eval_expr(b, t) for t in ts))


def sat_set(e, schema) -> frozenset:
    return frozenset(s for s in states(schema) if eval_expr(e, s))


def triple_holds(pre, p, post, schema) -> bool:
    """{pre} p {post} read directly off the relation."""
    return all(eval_expr(post, t) for s in states(schema) if eval_expr(pre, s) for t in successors(p, s))


def never_changes(p, path, schema) -> bool:
    return all(t[path] == s[path] for s in states(schema) for t in successors(p, s))


# -- exhaustive enumeration over BOOL2 ------------------------------------------------------

def bool2_posts() -> list:
    """One postcondition per Boolean function of x and n.y (all sixteen)."""
    x, y = Var(X), Var(Y)
    minterms = [And((x, y)), And((x, Not(y))), And((Not(x), y)), And((Not(x), Not(y)))]
    out = []
    for mask in range(16):
        terms = [m for i, m in enumerate(minterms) if mask >> i & 1]
        out.append(Or(tuple(terms)) if len(terms) > 1 else (terms[0] if terms else FALSE))
    return out


def _bool2_atoms():
    x, y = Var(X), Var(Y)
    return [Skip(), Abort(), Assign(X, Not(y)), Assign(Y, x), Havoc(X, TRUE)]


def _inner_atoms():
    # programs over the namespace n, whose only variable is y
    y = Var(("y",))
    return [Assign(("y",), Not(y)), Havoc(("y",), Neq(Bound("new"), y))]


def _grow(atoms, conds, depth, frame_layers=None):
    """All programs built from ``atoms`` with the grammar's combinators, by exact depth."""
    layers = [[], list(atoms)]
    for d in range(2, depth + 1):
        below = [p for layer in layers[:d] for p in layer]
        new = []
        for a, b in itertools.product(below, repeat=2):
            if max(_depth_of(a, layers), _depth_of(b, layers)) == d - 1:
                new.append(Seq(a, b))
                new.append(Choice(a, b))
        for c in conds:
            new += [Guard(c, a) for a in layers[d - 1]]
        if frame_layers is not None:
            new += [Frame(("n",), a) for a in frame_layers[d - 1]]
        layers.append(new)
    return layers


def _depth_of(p, layers):
    for d, layer in enumerate(layers):
        if p in layer:
            return d
    raise ValueError(p)


def bool2_programs(depth: int = 3) -> list:
    """Every program of AST depth <= ``depth`` over the BOOL2 fragment, elaborated."""
    inner = _grow(_inner_atoms(), [Var(("y",))], depth - 1)
    layers = _grow(_bool2_atoms(), [Var(X)], depth, inner)
    progs = [p for layer in layers for p in layer]
    return [elaborate_prog(p, BOOL2) for p in progs]


# -- random generation ------------------------------------------------------------------

def random_expr(rng: random.Random, schema: Schema, depth: int = 2):
    paths = schema.paths
    k = rng.randrange(7 if depth > 0 else 3)
    if k == 0:
        p = rng.choice(paths)
        return Eq(Var(p), Lit(rng.choice(schema.leaf_type(p).values())))
    if k == 1:
        return Lit(rng.random() < 0.5)
    if k == 2:
        ints = [p for p in paths if isinstance(schema.leaf_type(p), IntT)]
        bools = [p for p in paths if isinstance(schema.leaf_type(p), BoolT)]
        if ints and rng.random() < 0.5:
            return Leq(Plus(Var(rng.choice(ints)), Lit(rng.randrange(2))), Lit(rng.randrange(3)))
        if bools:
            return Var(rng.choice(bools))
        return TRUE
    if k == 3:
        return And((random_expr(rng, schema, depth - 1), random_expr(rng, schema, depth - 1)))
    if k == 4:
        return Or((random_expr(rng, schema, depth - 1), Not(random_expr(rng, schema, depth - 1))))
    if k == 5:
        return Implies(random_expr(rng, schema, depth - 1), random_expr(rng, schema, depth - 1))
    return Not(random_expr(rng, schema, depth - 1))


def _random_rhs(rng, schema, p):
    t = schema.leaf_type(p)
    if isinstance(t, IntT):
        others = [q for q in schema.paths if isinstance(schema.leaf_type(q), IntT)]
        return rng.choice([Lit(rng.choice(t.values())), Plus(Var(rng.choice(others)), Lit(1))])
    if isinstance(t, BoolT):
        return rng.choice([Lit(rng.random() < 0.5), Not(Var(p)), random_expr(rng, schema, 1)])
    return Lit(rng.choice(t.values()))


def random_prog(rng: random.Random, schema: Schema, depth: int = 3):
    k = rng.randrange(9 if depth > 0 else 3)
    if k == 0:
        return Skip()
    if k == 1:
        return Abort() if rng.random() < 0.5 else Skip()
    if k == 2:
        p = rng.choice(schema.paths)
        return Assign(p, _random_rhs(rng, schema, p))
    if k == 3:
        return Seq(random_prog(rng, schema, depth - 1), random_prog(rng, schema, depth - 1))
    if k == 4:
        return Choice(random_prog(rng, schema, depth - 1), random_prog(rng, schema, depth - 1))
    if k == 5:
        return Guard(random_expr(rng, schema, 1), random_prog(rng, schema, depth - 1))
    if k == 6:
        ns = sorted(n for n in schema.namespaces if n)
        if ns:
            a = rng.choice(ns)
            return Frame(a, random_prog(rng, schema.subschema(a), depth - 1))
        return Skip()
    if k == 7:
        p = rng.choice(schema.paths)
        c = rng.choice([TRUE, Neq(Bound("new"), Var(p)), Eq(Bound("new"), Var(p))])
        return Havoc(p, c)
    return random_prog(rng, schema, depth - 1)


def random_case(rng: random.Random, schema: Schema, depth: int = 3):
    """An elaborated (program, postcondition) pair."""
    p = elaborate_prog(random_prog(rng, schema, depth), schema)
    b = elaborate_expr(random_expr(rng, schema, 2), schema)
    return p, b
