"""Evidence bridge: bind .ial artifacts to .gcl obligations, discharge them, feed claim status."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .diagnostics import error
from .engine import checks
from .engine.calculus import SEMANTIC_FALLBACK, STRUCTURAL
from .engine.checks import ERROR, FAIL, PASS, Verdict
from .gclfront.module import EQUIV, HOARE, NMODS, VALID, GclModule, Obligation
from .kernel.types import DEFAULT_STATE_BOUND, StateSpaceTooLarge, format_value
from .sacm import AntiquotationKind, AssuranceModel, formal_refs


@dataclass(frozen=True)
class ObligationBinding:
    artifact_gid: str
    obligation_gid: str


def formal_names(gcls) -> dict:
    """AntiquotationKind -> names declared across the loaded modules."""
    out = {AntiquotationKind.OBLIGATION: set(), AntiquotationKind.PROGRAM: set(),
           AntiquotationKind.PREDICATE: set()}
    for m in gcls:
        out[AntiquotationKind.OBLIGATION] |= set(m.obligations)
        out[AntiquotationKind.PROGRAM] |= set(m.progs)
        out[AntiquotationKind.PREDICATE] |= set(m.preds)
    return out


def obligation_index(gcls) -> dict:
    """Obligation gid -> (module, obligation); the first module declaring a gid wins."""
    index: dict = {}
    for m in gcls:
        for gid, ob in m.obligations.items():
            index.setdefault(gid, (m, ob))
    return index


def bind(model: AssuranceModel, gcls) -> tuple:
    """One binding per Obligation antiquotation in an artifact description."""
    index = obligation_index(gcls)
    bindings, diags = [], []
    for art in model.artifacts():
        for r in formal_refs(art):
            if r.kind is not AntiquotationKind.OBLIGATION:
                continue
            if r.target not in index:
                diags.append(error("E101", r.span or art.span,
                                   f"{art.gid}: no obligation named {r.target}", subject=art.gid))
                continue
            b = ObligationBinding(art.gid, r.target)
            if b not in bindings:
                bindings.append(b)
    return bindings, diags


def check_obligation(ob: Obligation, module: GclModule, bound: int = DEFAULT_STATE_BOUND) -> Verdict:
    schema = module.schema
    try:
        if ob.kind == HOARE:
            return checks.hoare(ob.pre, ob.prog, ob.post, schema, bound)
        if ob.kind == VALID:
            return checks.valid(ob.goal, schema, bound)
        if ob.kind == NMODS:
            return checks.nmods(ob.prog, ob.vars, schema, bound)
        if ob.kind == EQUIV:
            return checks.equiv(ob.prog, ob.other, schema, bound)
    except StateSpaceTooLarge as exc:
        method = STRUCTURAL if ob.kind in (HOARE, VALID) else SEMANTIC_FALLBACK
        return Verdict(ERROR, method, message=str(exc))
    raise ValueError(f"unknown obligation kind {ob.kind}")


@dataclass(frozen=True)
class ReportEntry:
    gid: str
    module: str
    verdict: Verdict
    millis: float

    def to_json(self) -> dict:
        out = {"gid": self.gid, "status": self.verdict.status, "method": self.verdict.method,
               "millis": round(self.millis, 3)}
        if self.verdict.message:
            out["message"] = self.verdict.message
        if self.verdict.counterexample is not None:
            s, t = self.verdict.counterexample
            out["counterexample"] = {"state": _state_json(s)}
            if t is not None:
                out["counterexample"]["final"] = _state_json(t)
        return out


def _state_json(s) -> dict:
    return {k: format_value(v) for k, v in s.as_dict().items()}


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def verdict(self, gid: str) -> Verdict | None:
        return next((e.verdict for e in self.entries if e.gid == gid), None)

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "error": 0}
        for e in self.entries:
            counts[e.verdict.status.lower()] += 1
        return counts

    @property
    def all_passed(self) -> bool:
        return all(e.verdict.passed for e in self.entries)

    def to_json(self) -> dict:
        return {"obligations": [e.to_json() for e in self.entries], "summary": self.summary}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def format_text(self) -> str:
        width = max([len(e.gid) for e in self.entries] + [10])
        lines = [f"{'obligation'.ljust(width)}  status  method            millis"]
        for e in self.entries:
            v = e.verdict
            lines.append(f"{e.gid.ljust(width)}  {v.status.ljust(6)}  {v.method.ljust(16)}  {e.millis:8.1f}")
            if v.message:
                lines.append(f"  {v.message}")
            if v.counterexample is not None:
                s, t = v.counterexample
                lines.append(f"  counterexample: {s!r}")
                if t is not None:
                    lines.append(f"  final state:    {t!r}")
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['error']} errors")
        return "\n".join(lines)


def _run(gids, index, bound) -> VerificationReport:
    report = VerificationReport()
    for gid in sorted(set(gids)):
        module, ob = index[gid]
        start = time.perf_counter()
        v = check_obligation(ob, module, bound)
        report.entries.append(ReportEntry(gid, module.name, v, (time.perf_counter() - start) * 1000))
    return report


def run_all(bindings, gcls, bound: int = DEFAULT_STATE_BOUND) -> VerificationReport:
    """Discharge every bound obligation once, reported in gid order."""
    index = obligation_index(gcls)
    return _run([b.obligation_gid for b in bindings if b.obligation_gid in index], index, bound)


def run_modules(gcls, bound: int = DEFAULT_STATE_BOUND) -> VerificationReport:
    """Discharge every obligation of every module, bound or not."""
    index = obligation_index(gcls)
    return _run(list(index), index, bound)


def attach_verdicts(model: AssuranceModel, report: VerificationReport) -> dict:
    """Artifact gid -> conjunction of the verdicts of the obligations its description links to.

    An obligation missing from the report counts as an Error; Fail outranks Error.
    """
    out = {}
    for art in model.artifacts():
        gids = [r.target for r in formal_refs(art) if r.kind is AntiquotationKind.OBLIGATION]
        if not gids:
            continue
        vs = [report.verdict(g) or Verdict(ERROR, message=f"{g} was not run") for g in gids]
        bad = [v for v in vs if v.status == FAIL] or [v for v in vs if v.status == ERROR]
        out[art.gid] = bad[0] if bad else Verdict(PASS, _method(vs))
    return out


def _method(vs) -> str:
    return SEMANTIC_FALLBACK if any(v.method == SEMANTIC_FALLBACK for v in vs) else STRUCTURAL
