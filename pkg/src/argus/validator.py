"""Resolution, metamodel constraints, cascading errors and claim support status."""
from __future__ import annotations

from enum import Enum
from graphlib import CycleError, TopologicalSorter

from .diagnostics import Diagnostic, error, warning
from .sacm import (AntiquotationKind, ArtifactElement, ArtifactKind, AssertedRelationship,
                   AssertionDeclaration as Decl, AssuranceModel, Claim, RelKind, formal_refs,
                   is_artifact, is_assertion, references)


class ClaimStatus(Enum):
    SUPPORTED = "Supported"
    UNSUPPORTED = "Unsupported"
    ASSUMED = "Assumed"
    AXIOMATIC = "Axiomatic"
    DEFEATED = "Defeated"
    NEEDS_SUPPORT = "NeedsSupport"
    CITED = "Cited"


class CyclicSupport(Exception):
    def __init__(self, gids):
        self.gids = tuple(gids)
        super().__init__("cyclic support: " + " -> ".join(self.gids))


def resolve(raws, formal: dict | None = None) -> tuple:
    """Build the model; report duplicate gids, dangling references and antiquotation kind errors.

    ``formal`` maps each formal AntiquotationKind to the names declared by the
    loaded .gcl modules. When it is None, formal antiquotations are not checked.
    """
    model = AssuranceModel()
    diags = []
    for elem in raws:
        if elem.gid in model:
            first = model.get(elem.gid)
            where = f" (first declared at {first.span})" if first.span else ""
            diags.append(error("E103", elem.span, f"duplicate gid {elem.gid}{where}", subject=elem.gid))
            continue
        model.add_element(elem)
    for elem in model.elements.values():
        for r in references(elem):
            target = model.get(r.target)
            if target is None:
                what = f"@{{{r.kind.value} {r.target}}}" if r.kind else f"{r.role} {r.target}"
                diags.append(error("E101", r.span, f"{elem.gid}: {what} does not exist", subject=elem.gid))
            elif r.kind is not None and target.kind != r.kind.value:
                diags.append(error("E102", r.span,
                                   f"{elem.gid}: {r.target} has kind {target.kind}, expected {r.kind.value}",
                                   subject=elem.gid))
        if formal is not None:
            for r in formal_refs(elem):
                if r.target not in formal.get(r.kind, ()):
                    diags.append(error("E101", r.span or elem.span,
                                       f"{elem.gid}: no {r.kind.value.lower()} named {r.target}",
                                       subject=elem.gid))
    return model, _ordered(diags)


def _describe(elem) -> str:
    return elem.kind if elem is not None else "missing element"


def check_constraints(model: AssuranceModel) -> list:
    diags = []

    def bad(elem, role, gid, need):
        target = model.get(gid)
        diags.append(error("E201", _ref_span(elem, role, gid),
                           f"{elem.kind} {elem.gid}: {role} {gid} is a {_describe(target)}, "
                           f"but must be {need}", subject=elem.gid))

    incoming = _incoming(model)
    for elem in model.elements.values():
        if isinstance(elem, Claim):
            for g in elem.meta_claims:
                if g in model and not is_assertion(model.get(g)):
                    bad(elem, "metaClaims", g, "an assertion")
            if elem.declaration is Decl.ASSERTED and not incoming.get(elem.gid):
                diags.append(warning("W501", elem.span, f"claim {elem.gid} is undeveloped: nothing "
                                     "supports it and it is not declared axiomatic, assumed or needsSupport",
                                     subject=elem.gid))
        elif isinstance(elem, AssertedRelationship):
            src_ok = {RelKind.INFERENCE: (is_assertion, "an assertion"),
                      RelKind.EVIDENCE: (is_artifact, "an artifact"),
                      RelKind.CONTEXT: (lambda e: True, "")}[elem.variant]
            for g in elem.src:
                if g in model and not src_ok[0](model.get(g)):
                    bad(elem, "src", g, src_ok[1])
            for g in elem.tgt:
                if g in model and not is_assertion(model.get(g)):
                    bad(elem, "tgt", g, "an assertion")
        elif elem.variant is ArtifactKind.ARTIFACT_RELATION:
            for role, gids in (("src", elem.src), ("tgt", elem.tgt)):
                for g in gids:
                    if g in model and not is_artifact(model.get(g)):
                        bad(elem, role, g, "an artifact")
    return _ordered(diags)


def _ref_span(elem, role, gid):
    for r in references(elem):
        if r.role == role and r.target == gid:
            return r.span
    return elem.span


def _incoming(model) -> dict:
    """Claim gid -> relationships targeting it."""
    out: dict = {}
    for rel in model.relationships():
        for g in rel.tgt:
            out.setdefault(g, []).append(rel)
    return out


def cascade(model: AssuranceModel, base) -> list:
    """Add one E301 to every element that depends on an element with a primary error."""
    broken = []
    for d in base:
        if d.is_error and d.subject is not None and d.subject not in broken:
            broken.append(d.subject)
    primary = set(broken)
    # roots in source order so the chosen cause is stable
    order = {g: i for i, g in enumerate(model.elements)}
    broken.sort(key=lambda g: order.get(g, len(order)))
    cascaded = {}
    for root in broken:
        for dep in sorted(model.dependents(root), key=lambda g: order.get(g, len(order))):
            if dep in primary or dep in cascaded:
                continue
            elem = model.get(dep)
            if elem is None:
                continue
            span = next((r.span for r in references(elem) if r.target == root), None) or elem.span
            cascaded[dep] = error("E301", span, f"{dep} cannot be checked because {root} failed",
                                  caused_by=root, subject=dep)
    return _ordered(list(base) + list(cascaded.values()))


def _ordered(diags) -> list:
    seen = set()
    out = []
    for d in sorted(diags, key=Diagnostic.sort_key):
        key = (d.code, d.span, d.message, d.caused_by)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


def validate(raws, formal: dict | None = None) -> tuple:
    """resolve + check_constraints + cascade."""
    model, diags = resolve(raws, formal)
    diags = cascade(model, diags + check_constraints(model))
    return model, diags


# -- support status ------------------------------------------------------------

_CONFERRING_DECLS = (Decl.ASSERTED, Decl.AXIOMATIC, Decl.ASSUMED)
_SUPPORTIVE = (ClaimStatus.SUPPORTED, ClaimStatus.AXIOMATIC, ClaimStatus.ASSUMED)


def formal_artifacts(model: AssuranceModel) -> set:
    """Artifacts whose descriptions link to at least one obligation."""
    return {a.gid for a in model.artifacts()
            if any(r.kind is AntiquotationKind.OBLIGATION for r in formal_refs(a))}


def support_order(model: AssuranceModel) -> list:
    """Assertions ordered so every support premise precedes what it supports."""
    graph: dict = {}
    for elem in model.elements.values():
        if is_assertion(elem):
            graph.setdefault(elem.gid, set())
    for rel in model.relationships():
        if rel.variant is RelKind.CONTEXT:
            continue
        for s in rel.src:
            if is_assertion(model.get(s)):
                graph[rel.gid].add(s)
        for t in rel.tgt:
            if is_assertion(model.get(t)):
                graph[t].add(rel.gid)
    try:
        return list(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        cycle = exc.args[1]
        raise CyclicSupport(reversed(cycle)) from None


def claim_status(model: AssuranceModel, verdicts: dict) -> dict:
    """Status of every claim, given artifact-level verdicts (gid -> object with ``passed``)."""
    formal = formal_artifacts(model)
    incoming = _incoming(model)
    status: dict = {}
    holds: dict = {}  # relationship gid -> it confers its effect on its targets

    def source_ok(rel, g) -> bool:
        elem = model.get(g)
        if isinstance(elem, Claim):
            return status[g] in _SUPPORTIVE
        if isinstance(elem, AssertedRelationship):
            return holds[g]
        if isinstance(elem, ArtifactElement):
            if g in formal:
                v = verdicts.get(g)
                return v is not None and v.passed
            # informal evidence counts only when the link itself is taken on trust
            return rel.declaration in (Decl.AXIOMATIC, Decl.ASSUMED)
        return False

    for gid in support_order(model):
        elem = model.get(gid)
        if isinstance(elem, AssertedRelationship):
            holds[gid] = (elem.variant is not RelKind.CONTEXT
                          and elem.declaration in _CONFERRING_DECLS
                          and all(source_ok(elem, s) for s in elem.src))
            continue
        rels = [r for r in incoming.get(gid, ()) if r.variant is not RelKind.CONTEXT]
        decl = elem.declaration
        if decl is Decl.DEFEATED or any(r.is_counter and holds[r.gid] for r in rels):
            st = ClaimStatus.DEFEATED
        elif decl is Decl.AXIOMATIC:
            st = ClaimStatus.AXIOMATIC
        elif decl is Decl.ASSUMED:
            st = ClaimStatus.ASSUMED
        elif decl is Decl.AS_CITED:
            st = ClaimStatus.CITED
        elif any(not r.is_counter and holds[r.gid] for r in rels):
            st = ClaimStatus.SUPPORTED
        elif decl is Decl.NEEDS_SUPPORT:
            st = ClaimStatus.NEEDS_SUPPORT
        else:
            st = ClaimStatus.UNSUPPORTED
        status[gid] = st
    return {c.gid: status[c.gid] for c in model.claims()}
