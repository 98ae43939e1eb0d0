"""Source spans and compiler-style diagnostics shared by both frontends."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


# code -> short meaning; the set is closed
CODES = {
    "E000": "unreadable input",
    "E001": "syntax error",
    "E101": "unresolved reference",
    "E102": "kind or type mismatch",
    "E103": "duplicate identifier",
    "E201": "metamodel constraint violation",
    "E301": "cascaded error",
    "W501": "undeveloped claim",
}


@dataclass(frozen=True, order=True)
class SourceSpan:
    file: str
    line: int
    col: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.col < 1 or self.length < 1:
            raise ValueError(f"invalid span {self.line}:{self.col}+{self.length}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    span: SourceSpan
    message: str
    caused_by: str | None = None
    subject: str | None = None  # gid of the element the diagnostic is attached to

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code}")
        if self.code == "E301" and self.caused_by is None:
            raise ValueError("cascaded diagnostics need caused_by")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self) -> str:
        out = f"{self.span}: {self.severity.value} {self.code}: {self.message}"
        if self.caused_by is not None:
            out += f" [caused by {self.caused_by}]"
        return out

    def sort_key(self):
        return (self.span.file, self.span.line, self.span.col, self.code, self.message)


def error(code: str, span: SourceSpan, message: str, **kw) -> Diagnostic:
    return Diagnostic(code, Severity.ERROR, span, message, **kw)


def warning(code: str, span: SourceSpan, message: str, **kw) -> Diagnostic:
    return Diagnostic(code, Severity.WARNING, span, message, **kw)


def has_errors(diags) -> bool:
    return any(d.is_error for d in diags)
