"""In-memory SACM argumentation model: elements, identity, lookup and reverse dependencies."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .diagnostics import SourceSpan

GID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def check_gid(gid: str) -> str:
    if not isinstance(gid, str) or not GID_RE.match(gid):
        raise ValueError(f"invalid gid {gid!r}")
    return gid


class AntiquotationKind(Enum):
    CLAIM = "Claim"
    ARTIFACT = "Artifact"
    REQUIREMENT = "Requirement"
    RESOURCE = "Resource"
    ACTIVITY = "Activity"
    EVENT = "Event"
    PARTICIPANT = "Participant"
    TECHNIQUE = "Technique"
    OBLIGATION = "Obligation"
    PROGRAM = "Program"
    PREDICATE = "Predicate"

    @property
    def formal(self) -> bool:
        """Formal kinds name .gcl entities rather than model elements."""
        return self in _FORMAL

    @classmethod
    def parse(cls, text: str) -> "AntiquotationKind":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown antiquotation kind {text!r}") from None


_FORMAL = frozenset({AntiquotationKind.OBLIGATION, AntiquotationKind.PROGRAM, AntiquotationKind.PREDICATE})


class AssertionDeclaration(Enum):
    ASSERTED = "asserted"
    AXIOMATIC = "axiomatic"
    DEFEATED = "defeated"
    ASSUMED = "assumed"
    NEEDS_SUPPORT = "needsSupport"
    AS_CITED = "asCited"


@dataclass(frozen=True)
class Text:
    text: str


@dataclass(frozen=True)
class Ref:
    kind: AntiquotationKind
    target: str
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        check_gid(self.target)


@dataclass(frozen=True)
class MultiLangString:
    segments: tuple = ()

    def refs(self):
        return [s for s in self.segments if isinstance(s, Ref)]

    def is_blank(self) -> bool:
        return all(isinstance(s, Text) and not s.text.strip() for s in self.segments)

    def source(self) -> str:
        """The description text as written, antiquotations included."""
        out = []
        for s in self.segments:
            out.append(s.text if isinstance(s, Text) else f"@{{{s.kind.value} {s.target}}}")
        return "".join(out)

    def plain(self) -> str:
        """Readable text with antiquotations replaced by their targets."""
        return "".join(s.text if isinstance(s, Text) else s.target for s in self.segments)


EMPTY = MultiLangString()


class RelKind(Enum):
    INFERENCE = "Inference"
    CONTEXT = "Context"
    EVIDENCE = "Evidence"


class ArtifactKind(Enum):
    ARTIFACT = "Artifact"
    REQUIREMENT = "Requirement"
    RESOURCE = "Resource"
    ACTIVITY = "Activity"
    EVENT = "Event"
    PARTICIPANT = "Participant"
    TECHNIQUE = "Technique"
    ARTIFACT_RELATION = "ArtifactRelation"


# reference-list spans are positional and never part of structural equality
def _spans():
    return field(default=(), compare=False, repr=False)


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Claim:
    gid: str
    content: MultiLangString = EMPTY
    declaration: AssertionDeclaration = AssertionDeclaration.ASSERTED
    is_abstract: bool = False
    is_citation: bool = False
    meta_claims: tuple = ()
    span: SourceSpan | None = _span()
    meta_spans: tuple = _spans()

    def __post_init__(self):
        check_gid(self.gid)
        for g in self.meta_claims:
            check_gid(g)

    @property
    def kind(self) -> str:
        return "Claim"


@dataclass(frozen=True)
class AssertedRelationship:
    gid: str
    variant: RelKind
    src: tuple
    tgt: tuple
    content: MultiLangString = EMPTY
    declaration: AssertionDeclaration = AssertionDeclaration.ASSERTED
    is_counter: bool = False
    span: SourceSpan | None = _span()
    src_spans: tuple = _spans()
    tgt_spans: tuple = _spans()

    def __post_init__(self):
        check_gid(self.gid)
        for g in self.src + self.tgt:
            check_gid(g)
        # the grammar admits empty lists; the metamodel does not
        if not self.src or not self.tgt:
            raise ValueError(f"{self.variant.value} {self.gid} needs nonempty src and tgt")

    @property
    def kind(self) -> str:
        return self.variant.value

    @property
    def reasoning(self) -> MultiLangString | None:
        """Strategy text: an inference's nonblank description doubles as its reasoning."""
        if self.variant is RelKind.INFERENCE and not self.content.is_blank():
            return self.content
        return None


@dataclass(frozen=True)
class ArtifactElement:
    gid: str
    variant: ArtifactKind
    content: MultiLangString = EMPTY
    version: str | None = None
    date: str | None = None
    location: str | None = None
    start_time: str | None = None
    end_time: str | None = None
    occurrence: str | None = None
    src: tuple = ()
    tgt: tuple = ()
    span: SourceSpan | None = _span()
    src_spans: tuple = _spans()
    tgt_spans: tuple = _spans()

    def __post_init__(self):
        check_gid(self.gid)
        for g in self.src + self.tgt:
            check_gid(g)
        if self.variant is ArtifactKind.RESOURCE and not self.location:
            raise ValueError(f"Resource {self.gid} needs a nonempty location")
        if self.variant is not ArtifactKind.ARTIFACT_RELATION and (self.src or self.tgt):
            raise ValueError(f"{self.variant.value} {self.gid} cannot carry src/tgt")

    @property
    def kind(self) -> str:
        return self.variant.value


def is_assertion(elem) -> bool:
    return isinstance(elem, (Claim, AssertedRelationship))


def is_artifact(elem) -> bool:
    return isinstance(elem, ArtifactElement)


@dataclass(frozen=True)
class Reference:
    """One outgoing mention of a gid from an element."""
    target: str
    role: str  # "src", "tgt", "metaClaims" or "content"
    span: SourceSpan | None
    kind: AntiquotationKind | None = None  # set for description antiquotations


def references(elem) -> list:
    """Mentions of other model elements, in source order; formal antiquotations are excluded."""
    out = []
    if isinstance(elem, Claim):
        out += [Reference(g, "metaClaims", _at(elem.meta_spans, i, elem.span))
                for i, g in enumerate(elem.meta_claims)]
    else:
        out += [Reference(g, "src", _at(elem.src_spans, i, elem.span)) for i, g in enumerate(elem.src)]
        out += [Reference(g, "tgt", _at(elem.tgt_spans, i, elem.span)) for i, g in enumerate(elem.tgt)]
    for r in elem.content.refs():
        if not r.kind.formal:
            out.append(Reference(r.target, "content", r.span or elem.span, r.kind))
    return out


def formal_refs(elem) -> list:
    return [r for r in elem.content.refs() if r.kind.formal]


def _at(spans, i, default):
    return spans[i] if i < len(spans) else default


class ModelError(Exception):
    pass


class DuplicateGid(ModelError):
    def __init__(self, gid: str):
        super().__init__(f"duplicate gid {gid}")
        self.gid = gid


class Unresolved(ModelError):
    def __init__(self, gid: str):
        super().__init__(f"no element named {gid}")
        self.gid = gid


class KindMismatch(ModelError):
    def __init__(self, gid: str, expected: AntiquotationKind, actual: str):
        super().__init__(f"{gid} is a {actual}, expected a {expected.value}")
        self.gid = gid
        self.expected = expected
        self.actual = actual


@dataclass
class AssuranceModel:
    elements: dict = field(default_factory=dict)
    reverse_deps: dict = field(default_factory=dict)

    def __contains__(self, gid) -> bool:
        return gid in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def get(self, gid: str):
        return self.elements.get(gid)

    def add_element(self, elem) -> "AssuranceModel":
        if elem.gid in self.elements:
            raise DuplicateGid(elem.gid)
        self.elements[elem.gid] = elem
        self.reverse_deps.setdefault(elem.gid, set())
        for r in references(elem):
            self.reverse_deps.setdefault(r.target, set()).add(elem.gid)
        return self

    def lookup(self, gid: str, expected: AntiquotationKind):
        elem = self.elements.get(gid)
        if elem is None:
            raise Unresolved(gid)
        if elem.kind != expected.value:
            raise KindMismatch(gid, expected, elem.kind)
        return elem

    def dependents(self, gid: str) -> set:
        seen: set = set()
        stack = list(self.reverse_deps.get(gid, ()))
        while stack:
            g = stack.pop()
            if g in seen or g == gid:
                continue
            seen.add(g)
            stack.extend(self.reverse_deps.get(g, ()))
        return seen

    def recompute_reverse_deps(self) -> dict:
        out: dict = {g: set() for g in self.elements}
        for elem in self.elements.values():
            for r in references(elem):
                out.setdefault(r.target, set()).add(elem.gid)
        return out

    def claims(self):
        return [e for e in self.elements.values() if isinstance(e, Claim)]

    def relationships(self):
        return [e for e in self.elements.values() if isinstance(e, AssertedRelationship)]

    def artifacts(self):
        return [e for e in self.elements.values() if isinstance(e, ArtifactElement)]
