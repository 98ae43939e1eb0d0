"""Command-line driver: ``argus check|verify|status|render FILE...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bridge
from .diagnostics import SourceSpan, error, has_errors
from .gclfront.parser import parse_gcl
from .ial import parse_ial_file
from .kernel.types import DEFAULT_STATE_BOUND
from .render import dumps_json, to_dot
from .sacm import AssertionDeclaration
from .validator import ClaimStatus, CyclicSupport, claim_status, validate

EXIT_OK = 0
EXIT_ERRORS = 1
EXIT_FAILED = 2
EXIT_USAGE = 3

_BAD_STATUS = (ClaimStatus.UNSUPPORTED, ClaimStatus.DEFEATED)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this tool reserves 2 for failed obligations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CliConfig:
    inputs: list
    format: str = "text"
    state_bound: int = DEFAULT_STATE_BOUND
    color: str = "auto"
    out: str | None = None


@dataclass
class Workspace:
    """Everything loaded from the inputs, plus the diagnostics found on the way."""
    gcls: list = field(default_factory=list)
    elements: list = field(default_factory=list)
    ial_names: list = field(default_factory=list)
    diags: list = field(default_factory=list)
    model: object = None

    @property
    def has_ial(self) -> bool:
        return bool(self.ial_names)

    @property
    def ok(self) -> bool:
        return not has_errors(self.diags)


def load(paths) -> Workspace:
    """Parse every input, then resolve and check the combined argument model."""
    ws = Workspace()
    for path in paths:
        suffix = Path(path).suffix
        if suffix not in (".ial", ".gcl"):
            raise UsageError(f"{path}: expected a .ial or .gcl file")
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            ws.diags.append(error("E000", SourceSpan(str(path), 1, 1), f"cannot read {path}: "
                                  f"{getattr(exc, 'strerror', None) or exc}"))
            continue
        if suffix == ".gcl":
            mod, diags = parse_gcl(text, str(path))
            ws.diags += diags
            if mod is not None:
                ws.gcls.append(mod)
        else:
            f, diags = parse_ial_file(text, str(path))
            ws.diags += diags
            ws.ial_names.append(f.name or Path(path).stem)
            ws.elements += f.elements
    formal = bridge.formal_names(ws.gcls) if ws.gcls else None
    ws.model, diags = validate(ws.elements, formal)
    ws.diags += diags
    return ws


# -- output helpers -------------------------------------------------------------------

_ANSI = {"error": "\033[31m", "warning": "\033[33m", "Pass": "\033[32m", "Fail": "\033[31m",
         "Error": "\033[35m"}


def _paint(text: str, key: str, cfg: CliConfig, stream) -> str:
    use = cfg.color == "always" or (cfg.color == "auto" and stream.isatty() and "NO_COLOR" not in os.environ)
    return f"{_ANSI[key]}{text}\033[0m" if use and key in _ANSI else text


def _report_diags(diags, cfg: CliConfig):
    for d in diags:
        line = d.format()
        print(_paint(line, d.severity.value, cfg, sys.stderr), file=sys.stderr)


def _emit(text: str, cfg: CliConfig) -> int:
    if cfg.out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return EXIT_OK
    try:
        Path(cfg.out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"argus: cannot write {cfg.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_ERRORS
    return EXIT_OK


# -- commands -------------------------------------------------------------------------

def cmd_check(cfg: CliConfig) -> int:
    ws = load(cfg.inputs)
    _report_diags(ws.diags, cfg)
    if cfg.format == "json":
        _emit(json.dumps({"diagnostics": [_diag_json(d) for d in ws.diags]}, indent=2), cfg)
    return EXIT_OK if ws.ok else EXIT_ERRORS


def _diag_json(d) -> dict:
    out = {"code": d.code, "severity": d.severity.value, "file": d.span.file, "line": d.span.line,
           "col": d.span.col, "message": d.message}
    if d.caused_by:
        out["causedBy"] = d.caused_by
    return out


def _verify(ws: Workspace, cfg: CliConfig):
    """Report and artifact verdicts; with argument inputs only bound obligations run."""
    if ws.has_ial:
        bindings, diags = bridge.bind(ws.model, ws.gcls)
        ws.diags += diags
        report = bridge.run_all(bindings, ws.gcls, cfg.state_bound)
    else:
        report = bridge.run_modules(ws.gcls, cfg.state_bound)
    return report, bridge.attach_verdicts(ws.model, report)


def cmd_verify(cfg: CliConfig) -> int:
    ws = load(cfg.inputs)
    if not ws.ok:
        _report_diags(ws.diags, cfg)
        return EXIT_ERRORS
    report, _ = _verify(ws, cfg)
    _report_diags(ws.diags, cfg)
    if not ws.ok:
        return EXIT_ERRORS
    if cfg.format == "json":
        text = report.dumps()
    else:
        text = report.format_text()
        for key in ("Pass", "Fail", "Error"):
            text = text.replace(f"  {key.ljust(6)}  ", f"  {_paint(key.ljust(6), key, cfg, sys.stdout)}  ")
    code = _emit(text, cfg)
    if code:
        return code
    return EXIT_OK if report.all_passed else EXIT_FAILED


def statuses_for(ws: Workspace, cfg: CliConfig) -> dict:
    verdicts = _verify(ws, cfg)[1] if ws.gcls and ws.has_ial else {}
    return claim_status(ws.model, verdicts)


def cmd_status(cfg: CliConfig) -> int:
    ws = load(cfg.inputs)
    if not ws.ok:
        _report_diags(ws.diags, cfg)
        return EXIT_ERRORS
    try:
        status = statuses_for(ws, cfg)
    except CyclicSupport as exc:
        print(f"argus: {exc}", file=sys.stderr)
        return EXIT_ERRORS
    _report_diags(ws.diags, cfg)
    if not ws.ok:
        return EXIT_ERRORS
    if cfg.format == "json":
        text = json.dumps({"claims": [{"gid": g, "status": s.value} for g, s in status.items()]}, indent=2)
    else:
        width = max([len(g) for g in status] + [1])
        text = "\n".join(f"{g.ljust(width)}  {s.value}" for g, s in status.items())
    code = _emit(text, cfg)
    if code:
        return code
    failing = [g for g, s in status.items()
               if s in _BAD_STATUS and ws.model.get(g).declaration is not AssertionDeclaration.NEEDS_SUPPORT]
    return EXIT_FAILED if failing else EXIT_OK


def cmd_render(cfg: CliConfig) -> int:
    ws = load(cfg.inputs)
    _report_diags(ws.diags, cfg)
    if not ws.ok:
        return EXIT_ERRORS
    name = "_".join(ws.ial_names) or "argument"
    if cfg.format == "json":
        return _emit(dumps_json(ws.model, name), cfg)
    return _emit(to_dot(ws.model, name), cfg)


COMMANDS = {"check": cmd_check, "verify": cmd_verify, "status": cmd_status, "render": cmd_render}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="argus", description="Check, verify and render assurance arguments "
                                                "linked to guarded-command models.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    helps = {"check": "parse and validate the inputs",
             "verify": "discharge the proof obligations",
             "status": "print the support status of every claim",
             "render": "draw the argument as DOT or export it as JSON"}
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("inputs", nargs="+", metavar="FILE", help=".ial and .gcl files")
        formats = ("dot", "json") if name == "render" else ("text", "json")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--state-bound", type=_positive, default=DEFAULT_STATE_BOUND,
                       help="largest state space enumerated (default 2^24)")
        p.add_argument("--color", choices=("auto", "never", "always"), default="auto")
        p.add_argument("--out", help="write the output here instead of standard output")
    return parser


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(args.inputs, args.format, args.state_bound, args.color, args.out)
    try:
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"argus: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
