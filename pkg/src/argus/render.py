"""GSN-style DOT rendering and JSON export of assurance models."""
from __future__ import annotations

import json
import textwrap

from .sacm import (ArtifactElement, AssertedRelationship, AssuranceModel, Claim, RelKind, formal_refs,
                   references)

_WRAP = 32


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _label(gid: str, text: str, extra: str = "") -> str:
    body = textwrap.fill(" ".join(text.split()), _WRAP) if text.strip() else ""
    parts = [gid] + ([body] if body else []) + ([extra] if extra else [])
    return "\n".join(parts)


def _attrs(**kw) -> str:
    return "[" + ", ".join(f"{k}={v if k == 'label' else _quote(str(v))}" for k, v in kw.items()) + "]"


def to_dot(model: AssuranceModel, name: str = "argument", statuses: dict | None = None) -> str:
    """The argument view of ``model``.

    Claims are boxes, inferences that state their reasoning are parallelograms
    placed on the support path, evidence artifacts are ellipses. Support edges
    are solid with filled arrowheads, context edges dashed with open ones, and
    both point from the supported element towards its support.
    """
    statuses = statuses or {}
    nodes: list = []
    edges: list = []
    placed: set = set()

    def node(gid, shape, text, **extra):
        if gid in placed:
            return
        placed.add(gid)
        st = statuses.get(gid)
        label = _label(gid, text, st.value if st is not None else "")
        nodes.append(f"  {_quote(gid)} {_attrs(shape=shape, label=_quote(label), **extra)};")

    def edge(a, b, context=False, counter=False):
        style = dict(style="dashed", arrowhead="empty") if context else dict(style="solid", arrowhead="normal")
        if counter:
            style["color"] = "red"
        edges.append(f"  {_quote(a)} -> {_quote(b)} {_attrs(**style)};")

    for c in model.claims():
        extra = {"style": "dashed"} if c.declaration.value == "needsSupport" else {}
        node(c.gid, "box", c.content.plain(), **extra)

    strategies: set = set()
    for rel in model.relationships():
        if rel.variant is RelKind.INFERENCE and rel.reasoning is not None:
            node(rel.gid, "parallelogram", rel.reasoning.plain())
            strategies.add(rel.gid)

    def anchors(gid):
        """Nodes that stand for ``gid`` when it is the target of a context link."""
        if gid in placed:
            return [gid]
        rel = model.get(gid)
        if isinstance(rel, AssertedRelationship):
            return [t for g in rel.tgt for t in anchors(g)]
        return []

    for rel in model.relationships():
        if rel.variant is RelKind.CONTEXT:
            for s in rel.src:
                src = model.get(s)
                if isinstance(src, ArtifactElement):
                    node(s, "box", src.content.plain(), style="rounded")
                for t in rel.tgt:
                    for a in anchors(t):
                        if s in placed:
                            edge(a, s, context=True, counter=rel.is_counter)
            continue
        if rel.variant is RelKind.EVIDENCE:
            for s in rel.src:
                src = model.get(s)
                if isinstance(src, ArtifactElement):
                    node(s, "ellipse", src.content.plain())
        if rel.gid in strategies:
            for t in rel.tgt:
                if t in placed:
                    edge(t, rel.gid, counter=rel.is_counter)
            for s in rel.src:
                if s in placed:
                    edge(rel.gid, s)
        else:
            for t in rel.tgt:
                for s in rel.src:
                    if t in placed and s in placed:
                        edge(t, s, counter=rel.is_counter)

    out = [f"digraph {_quote(name)} {{", "  rankdir=TB;", '  node [fontname="Helvetica"];']
    return "\n".join(out + nodes + edges + ["}"]) + "\n"


def to_json(model: AssuranceModel, name: str = "argument", statuses: dict | None = None) -> dict:
    """Every element as a node and every reference as an edge."""
    statuses = statuses or {}
    nodes, edges = [], []
    for elem in model.elements.values():
        n = {"gid": elem.gid, "kind": elem.kind, "text": elem.content.source()}
        if isinstance(elem, (Claim, AssertedRelationship)):
            n["declaration"] = elem.declaration.value
        if isinstance(elem, AssertedRelationship) and elem.is_counter:
            n["isCounter"] = True
        if isinstance(elem, ArtifactElement):
            for key in ("version", "date", "location", "start_time", "end_time", "occurrence"):
                val = getattr(elem, key)
                if val is not None:
                    n[key] = val
        formal = [{"kind": r.kind.value, "target": r.target} for r in formal_refs(elem)]
        if formal:
            n["formal"] = formal
        if elem.gid in statuses:
            n["status"] = statuses[elem.gid].value
        nodes.append(n)
        for r in references(elem):
            e = {"source": elem.gid, "target": r.target, "role": r.role}
            if r.kind is not None:
                e["kind"] = r.kind.value
            edges.append(e)
    return {"name": name, "nodes": nodes, "edges": edges}


def dumps_json(model: AssuranceModel, name: str = "argument", statuses: dict | None = None) -> str:
    return json.dumps(to_json(model, name, statuses), indent=2)
