"""Finite types, hierarchical schemas and total states."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

Path = tuple  # tuple[str, ...]; the empty path denotes the whole state space

DEFAULT_STATE_BOUND = 2 ** 24

_VALUES: dict = {}
_RANKS: dict = {}


class StateSpaceTooLarge(Exception):
    def __init__(self, cardinality: int, bound: int):
        super().__init__(f"state space of {cardinality} states exceeds bound {bound}")
        self.cardinality = cardinality
        self.bound = bound


class SchemaError(Exception):
    pass


@dataclass(frozen=True)
class Some:
    """A defined optional value."""
    value: Any

    def __repr__(self) -> str:
        return f"Some({self.value!r})"


class FiniteType:
    def values(self) -> tuple:
        vals = _VALUES.get(self)
        if vals is None:
            vals = _VALUES[self] = self._values()
        return vals

    def rank(self, v) -> int:
        """Position of ``v`` in this type's enumeration order."""
        r = _RANKS.get(self)
        if r is None:
            r = _RANKS[self] = {x: i for i, x in enumerate(self.values())}
        return r[v]

    def _values(self) -> tuple:
        raise NotImplementedError

    @property
    def cardinality(self) -> int:
        return len(self.values())

    def contains(self, v) -> bool:
        return v in self.values()

    @property
    def first(self):
        return self.values()[0]


@dataclass(frozen=True)
class BoolT(FiniteType):
    def _values(self) -> tuple:
        return (False, True)

    def contains(self, v) -> bool:
        return isinstance(v, bool)

    def __str__(self) -> str:
        return "bool"


@dataclass(frozen=True)
class EnumT(FiniteType):
    constructors: tuple

    def __post_init__(self):
        if not self.constructors:
            raise SchemaError("enumeration needs at least one constructor")
        if len(set(self.constructors)) != len(self.constructors):
            raise SchemaError(f"duplicate constructors in {self.constructors}")

    def _values(self) -> tuple:
        return self.constructors

    def contains(self, v) -> bool:
        return isinstance(v, str) and v in self.constructors

    def __str__(self) -> str:
        return f"enum({', '.join(self.constructors)})"


@dataclass(frozen=True)
class IntT(FiniteType):
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise SchemaError(f"empty integer range {self.lo}..{self.hi}")

    def _values(self) -> tuple:
        return tuple(range(self.lo, self.hi + 1))

    @property
    def cardinality(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, v) -> bool:
        return isinstance(v, int) and not isinstance(v, bool) and self.lo <= v <= self.hi

    def __str__(self) -> str:
        return f"int[{self.lo}..{self.hi}]"


@dataclass(frozen=True)
class OptionT(FiniteType):
    inner: FiniteType

    def _values(self) -> tuple:
        return (None,) + tuple(Some(v) for v in self.inner.values())

    def contains(self, v) -> bool:
        return v is None or (isinstance(v, Some) and self.inner.contains(v.value))

    def __str__(self) -> str:
        return f"option {self.inner}"


@dataclass(frozen=True)
class SetT(FiniteType):
    inner: EnumT

    def __post_init__(self):
        if not isinstance(self.inner, EnumT):
            raise SchemaError("sets are only supported over enumerations")

    def _values(self) -> tuple:
        # ordered by bitmask over the constructor order, empty set first
        cs = self.inner.constructors
        out = []
        for mask in range(2 ** len(cs)):
            out.append(frozenset(c for i, c in enumerate(cs) if mask >> i & 1))
        return tuple(out)

    def contains(self, v) -> bool:
        return isinstance(v, frozenset) and all(self.inner.contains(x) for x in v)

    def __str__(self) -> str:
        return f"set({', '.join(self.inner.constructors)})"


def format_path(path: Sequence[str]) -> str:
    return ".".join(path)


def is_prefix(a: Path, b: Path) -> bool:
    return b[: len(a)] == a


def independent(a: Path, b: Path) -> bool:
    """Two paths denote disjoint state regions iff neither is a prefix of the other."""
    return not is_prefix(a, b) and not is_prefix(b, a)


class Schema:
    """A tree of namespaces whose leaves carry finite types.

    Leaves are kept in declaration order (depth first); that order fixes the
    enumeration order of states and therefore which counterexample is "first".
    """

    def __init__(self, leaves: Sequence[tuple[Path, FiniteType]]):
        self.leaves: tuple = tuple((tuple(p), t) for p, t in leaves)
        if not self.leaves:
            raise SchemaError("a schema needs at least one variable")
        self._types = {}
        self._index = {}
        namespaces = {()}
        for i, (p, t) in enumerate(self.leaves):
            if not p:
                raise SchemaError("empty variable path")
            if p in self._types:
                raise SchemaError(f"duplicate variable {format_path(p)}")
            self._types[p] = t
            self._index[p] = i
            for k in range(1, len(p)):
                namespaces.add(p[:k])
        for p in self._types:
            if p in namespaces:
                raise SchemaError(f"{format_path(p)} is both a variable and a namespace")
        self.namespaces = frozenset(namespaces)
        self._subs = {}

    @classmethod
    def from_tree(cls, tree: dict) -> "Schema":
        """Build from nested dicts: ``{"x": BoolT(), "ns": {"y": IntT(0, 3)}}``."""
        leaves = []

        def walk(prefix, node):
            for name, sub in node.items():
                if isinstance(sub, dict):
                    walk(prefix + (name,), sub)
                else:
                    leaves.append((prefix + (name,), sub))

        walk((), tree)
        return cls(leaves)

    def __eq__(self, other):
        return isinstance(other, Schema) and self.leaves == other.leaves

    def __hash__(self):
        return hash(self.leaves)

    def __repr__(self):
        inner = ", ".join(f"{format_path(p)}: {t}" for p, t in self.leaves)
        return f"Schema({inner})"

    @property
    def paths(self) -> tuple:
        return tuple(p for p, _ in self.leaves)

    def is_leaf(self, path: Path) -> bool:
        return tuple(path) in self._types

    def is_namespace(self, path: Path) -> bool:
        return tuple(path) in self.namespaces

    def leaf_type(self, path: Path) -> FiniteType:
        try:
            return self._types[tuple(path)]
        except KeyError:
            raise SchemaError(f"unknown variable {format_path(path)}") from None

    def index(self, path: Path) -> int:
        return self._index[tuple(path)]

    def leaves_under(self, prefix: Path) -> tuple:
        return tuple(p for p, _ in self.leaves if is_prefix(prefix, p))

    def subschema(self, prefix: Path) -> "Schema":
        prefix = tuple(prefix)
        sub = self._subs.get(prefix)
        if sub is None:
            if not self.is_namespace(prefix):
                raise SchemaError(f"{format_path(prefix)} is not a namespace")
            sub = Schema([(p[len(prefix):], t) for p, t in self.leaves if is_prefix(prefix, p)])
            self._subs[prefix] = sub
        return sub

    @property
    def cardinality(self) -> int:
        n = 1
        for _, t in self.leaves:
            n *= t.cardinality
        return n

    def initial(self) -> "State":
        return State(self, tuple(t.first for _, t in self.leaves))


@dataclass(frozen=True)
class State:
    """A total, well-typed valuation of a schema's leaves."""
    schema: Schema = field(compare=False, hash=False, repr=False)
    values: tuple

    def __getitem__(self, path) -> Any:
        return self.values[self.schema.index(tuple(path))]

    def set(self, path, value) -> "State":
        i = self.schema.index(tuple(path))
        vals = list(self.values)
        vals[i] = value
        return State(self.schema, tuple(vals))

    def project(self, prefix: Path, inner: Schema) -> "State":
        """Restrict to the leaves under ``prefix``, re-rooted in ``inner``."""
        prefix = tuple(prefix)
        return State(inner, tuple(self[prefix + p] for p in inner.paths))

    def embed(self, prefix: Path, inner_state: "State") -> "State":
        """Overwrite the region under ``prefix`` with ``inner_state``."""
        vals = list(self.values)
        for p, v in zip(inner_state.schema.paths, inner_state.values):
            vals[self.schema.index(tuple(prefix) + p)] = v
        return State(self.schema, tuple(vals))

    def as_dict(self) -> dict:
        return {format_path(p): v for p, v in zip(self.schema.paths, self.values)}

    def sort_key(self) -> tuple:
        return tuple(t.rank(v) for (_, t), v in zip(self.schema.leaves, self.values))

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{k}: {format_value(v)}" for k, v in self.as_dict().items()) + "}"


def format_value(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "none"
    if isinstance(v, Some):
        return f"some({format_value(v.value)})"
    if isinstance(v, frozenset):
        return "{" + ", ".join(sorted(format_value(x) for x in v)) + "}"
    return str(v)


def states(schema: Schema, bound: int = DEFAULT_STATE_BOUND) -> Iterator[State]:
    """Every state of ``schema`` in deterministic (lexicographic) order."""
    n = schema.cardinality
    if n > bound:
        raise StateSpaceTooLarge(n, bound)
    domains = [t.values() for _, t in schema.leaves]
    for vals in itertools.product(*domains):
        yield State(schema, vals)
