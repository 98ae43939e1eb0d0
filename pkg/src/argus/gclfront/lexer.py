"""Tokenizer for .gcl files."""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..diagnostics import SourceSpan

KEYWORDS = frozenset("""
gclmodule state ns pred def obligation hoare valid nmods equiv
skip abort frame in havoc where
bool int enum option set
true false none some the and or not exists forall wp wlp lift
""".split())

# longest operators first
_SYMBOLS = ["<=>", ":=", "->", "=>", "!=", "<=", ">=", "..", "[]",
            "{", "}", "(", ")", "[", "]", ";", ":", "=", "<", ">", "+", ",", ".", "@"]

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>//[^\n]*)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|"
    r"(?P<sym>" + "|".join(re.escape(s) for s in _SYMBOLS) + ")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "kw", "sym", "eof"
    text: str
    span: SourceSpan

    def is_(self, text: str) -> bool:
        return self.kind in ("kw", "sym") and self.text == text


class GclLexError(Exception):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(message)
        self.span = span
        self.message = message


def tokenize(text: str, file: str) -> list:
    out = []
    pos, line, col = 0, 1, 1
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GclLexError(SourceSpan(file, line, col), f"illegal character {text[pos]!r}")
        s = m.group()
        kind = m.lastgroup
        if kind == "ident" and s in KEYWORDS:
            kind = "kw"
        if kind not in ("ws", "comment"):
            out.append(Token(kind, s, SourceSpan(file, line, col, len(s))))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", SourceSpan(file, line, col)))
    return out
