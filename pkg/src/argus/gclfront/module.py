"""Checked .gcl modules and their obligations."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..kernel.expr import Expr
from ..kernel.prog import Prog
from ..kernel.types import Schema

HOARE = "hoare"
VALID = "valid"
NMODS = "nmods"
EQUIV = "equiv"


@dataclass(frozen=True)
class Obligation:
    """A named verification goal.

    Payload by kind: hoare uses ``pre``/``prog``/``post`` (and ``prog_name``),
    valid uses ``goal``, nmods uses ``prog``/``vars``, equiv uses ``prog``/``other``.
    All expressions and programs are over the module's root state space.
    """
    gid: str
    kind: str
    pre: Expr | None = None
    prog: Prog | None = None
    post: Expr | None = None
    goal: Expr | None = None
    vars: tuple = ()
    other: Prog | None = None
    prog_name: str | None = None


@dataclass
class GclModule:
    name: str
    schema: Schema
    preds: dict = field(default_factory=dict)
    progs: dict = field(default_factory=dict)
    obligations: dict = field(default_factory=dict)
    # namespace each pred/def is stated over; absent means the root
    scopes: dict = field(default_factory=dict)

    def scope_of(self, name: str) -> tuple:
        return self.scopes.get(name, ())

    def schema_for(self, name: str) -> Schema:
        scope = self.scope_of(name)
        return self.schema.subschema(scope) if scope else self.schema
