"""Guarded-command program syntax."""
from __future__ import annotations

from .expr import Expr, node


class Prog:
    pass


@node
class Skip(Prog):
    pass


@node
class Abort(Prog):
    pass


@node
class Seq(Prog):
    first: Prog
    second: Prog


@node
class Guard(Prog):
    cond: Expr
    body: Prog


@node
class Choice(Prog):
    left: Prog
    right: Prog


@node
class Assign(Prog):
    path: tuple
    expr: Expr


@node
class Frame(Prog):
    """Run ``body`` on the namespace ``ns``; paths inside ``body`` are relative to it."""
    ns: tuple
    body: Prog


@node
class Havoc(Prog):
    """Set ``path`` to any value ``new`` satisfying ``constraint``."""
    path: tuple
    constraint: Expr


def seq(*ps: Prog) -> Prog:
    """Right-nested sequential composition; the empty sequence is skip."""
    ps = [p for p in ps]
    if not ps:
        return Skip()
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = Seq(p, out)
    return out


def choice(*ps: Prog) -> Prog:
    """Right-nested nondeterministic choice; the empty choice is abort."""
    if not ps:
        return Abort()
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = Choice(p, out)
    return out


def flatten_seq(p: Prog) -> list:
    if isinstance(p, Seq):
        return flatten_seq(p.first) + flatten_seq(p.second)
    return [p]


def flatten_choice(p: Prog) -> list:
    if isinstance(p, Choice):
        return flatten_choice(p.left) + flatten_choice(p.right)
    return [p]


def normalize(p: Prog) -> Prog:
    """Re-associate every Seq and Choice chain to the right."""
    if isinstance(p, Seq):
        return seq(*(normalize(q) for q in flatten_seq(p)))
    if isinstance(p, Choice):
        return choice(*(normalize(q) for q in flatten_choice(p)))
    if isinstance(p, Guard):
        return Guard(p.cond, normalize(p.body))
    if isinstance(p, Frame):
        return Frame(p.ns, normalize(p.body))
    return p


def depth(p: Prog) -> int:
    if isinstance(p, (Seq, Choice)):
        return 1 + max(depth(p.first if isinstance(p, Seq) else p.left),
                       depth(p.second if isinstance(p, Seq) else p.right))
    if isinstance(p, (Guard, Frame)):
        return 1 + depth(p.body)
    return 1


def writes(p: Prog) -> frozenset:
    """Leaf paths ``p`` may assign (syntactically), relative to ``p``'s state space."""
    if isinstance(p, (Assign, Havoc)):
        return frozenset((p.path,))
    if isinstance(p, Seq):
        return writes(p.first) | writes(p.second)
    if isinstance(p, Choice):
        return writes(p.left) | writes(p.right)
    if isinstance(p, Guard):
        return writes(p.body)
    if isinstance(p, Frame):
        return frozenset(p.ns + w for w in writes(p.body))
    return frozenset()
