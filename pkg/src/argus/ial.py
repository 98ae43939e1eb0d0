"""Lexer, parser and printer for .ial assurance files.

Parsing yields unresolved elements: reference lists and antiquotations hold
plain gid strings, and resolution happens in the validator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import SourceSpan, error
from .sacm import (ArtifactElement, ArtifactKind, AntiquotationKind, AssertedRelationship,
                   AssertionDeclaration, Claim, MultiLangString, Ref, RelKind, Text)

ELEMENT_KEYWORDS = ("Claim", "Inference", "Context", "Evidence", "Artifact", "Requirement",
                    "Resource", "Activity", "Event", "Participant", "Technique", "ArtifactRelation")
CLAUSE_KEYWORDS = ("src", "tgt", "metaClaims", "isAbstract", "isCitation", "isCounter", "version",
                   "date", "location", "startTime", "endTime", "occurrence")
DECL_KEYWORDS = {d.value: d for d in AssertionDeclaration}
KEYWORDS = frozenset(ELEMENT_KEYWORDS + CLAUSE_KEYWORDS + ("module",) + tuple(DECL_KEYWORDS))

_STR_FIELDS = {"version": "version", "date": "date", "location": "location",
               "startTime": "start_time", "endTime": "end_time", "occurrence": "occurrence"}
# string clauses each artifact command admits
_ARTIFACT_CLAUSES = {
    ArtifactKind.ARTIFACT: ("version", "date"),
    ArtifactKind.REQUIREMENT: ("version", "date"),
    ArtifactKind.RESOURCE: ("location",),
    ArtifactKind.ACTIVITY: ("startTime", "endTime"),
    ArtifactKind.EVENT: ("occurrence",),
    ArtifactKind.PARTICIPANT: (),
    ArtifactKind.TECHNIQUE: (),
    ArtifactKind.ARTIFACT_RELATION: (),
}


class IalLexError(Exception):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(message)
        self.span = span
        self.message = message


class UnterminatedString(IalLexError):
    pass


class IllegalCharacter(IalLexError):
    pass


class BadAntiquotation(IalLexError):
    pass


class UnknownKind(IalLexError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # "kw", "ident", "str", "desc", "eof"
    text: str  # for desc and str: the interior
    span: SourceSpan
    # where the interior of a desc/str starts, for spans inside descriptions
    body_line: int = 0
    body_col: int = 0

    def is_(self, word: str) -> bool:
        return self.kind == "kw" and self.text == word


_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_SPACE = re.compile(r"[ \t\r\n]+")


class _Cursor:
    """Tracks line and column while walking the text."""

    def __init__(self, text: str, file: str):
        self.text = text
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1

    def move_to(self, end: int):
        chunk = self.text[self.pos:end]
        nl = chunk.count("\n")
        if nl:
            self.line += nl
            self.col = len(chunk) - chunk.rfind("\n")
        else:
            self.col += len(chunk)
        self.pos = end

    def span(self, length: int = 1) -> SourceSpan:
        return SourceSpan(self.file, self.line, self.col, max(1, length))


def _scan(text: str, file: str, errors: list | None):
    """Token stream; lexical errors are raised, or collected when ``errors`` is a list."""
    cur = _Cursor(text, file)
    out = []
    n = len(text)
    while cur.pos < n:
        m = _SPACE.match(text, cur.pos)
        if m:
            cur.move_to(m.end())
            continue
        if text.startswith("//", cur.pos):
            end = text.find("\n", cur.pos)
            cur.move_to(n if end < 0 else end)
            continue
        start = cur.span()
        if text.startswith('"""', cur.pos):
            end = text.find('"""', cur.pos + 3)
            if end < 0:
                exc = UnterminatedString(start, "unterminated description")
                if errors is None:
                    raise exc
                errors.append(exc)
                cur.move_to(n)
                break
            cur.move_to(cur.pos + 3)
            bl, bc = cur.line, cur.col
            body = text[cur.pos:end]
            cur.move_to(end + 3)
            out.append(Token("desc", body, SourceSpan(file, start.line, start.col, len(body) + 6), bl, bc))
            continue
        ch = text[cur.pos]
        if ch == '"':
            end = text.find('"', cur.pos + 1)
            nl = text.find("\n", cur.pos + 1)
            if end < 0 or 0 <= nl < end:
                exc = UnterminatedString(start, "unterminated string")
                if errors is None:
                    raise exc
                errors.append(exc)
                cur.move_to(n if nl < 0 else nl)
                continue
            body = text[cur.pos + 1:end]
            cur.move_to(cur.pos + 1)
            bl, bc = cur.line, cur.col
            cur.move_to(end + 1)
            out.append(Token("str", body, SourceSpan(file, start.line, start.col, len(body) + 2), bl, bc))
            continue
        m = _WORD.match(text, cur.pos)
        if m:
            word = m.group()
            kind = "kw" if word in KEYWORDS else "ident"
            out.append(Token(kind, word, cur.span(len(word))))
            cur.move_to(m.end())
            continue
        exc = IllegalCharacter(start, f"illegal character {ch!r}")
        if errors is None:
            raise exc
        errors.append(exc)
        cur.move_to(cur.pos + 1)
    out.append(Token("eof", "", cur.span()))
    return out


def tokenize(text: str, file: str = "<ial>") -> list:
    return _scan(text, file, None)


_ANTIQ = re.compile(r"@\{[ \t]*([A-Za-z_][A-Za-z0-9_]*)[ \t]+([A-Za-z_][A-Za-z0-9_]*)[ \t]*\}")


def parse_description(text: str, file: str = "<ial>", line: int = 1, col: int = 1) -> MultiLangString:
    """Split description text into literal segments and ``@{Kind gid}`` references.

    ``line``/``col`` locate the first character of ``text`` for error spans.
    """
    cur = _Cursor(text, file)
    cur.line, cur.col = line, col
    segs = []
    last = 0
    pos = text.find("@{")
    while pos >= 0:
        cur.move_to(pos)
        m = _ANTIQ.match(text, pos)
        if m is None:
            raise BadAntiquotation(cur.span(2), "malformed antiquotation, expected '@{Kind gid}'")
        try:
            kind = AntiquotationKind.parse(m.group(1))
        except ValueError as exc:
            raise UnknownKind(cur.span(len(m.group(1)) + 2), str(exc)) from None
        if pos > last:
            segs.append(Text(text[last:pos]))
        segs.append(Ref(kind, m.group(2), cur.span(m.end() - pos)))
        last = m.end()
        pos = text.find("@{", last)
    if last < len(text):
        segs.append(Text(text[last:]))
    return MultiLangString(tuple(segs))


@dataclass
class IalFile:
    name: str | None
    elements: list


class _Fail(Exception):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(message)
        self.span = span
        self.message = message


class _Parser:
    def __init__(self, tokens, file):
        self.toks = tokens
        self.i = 0
        self.file = file

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def fail(self, message: str) -> _Fail:
        t = self.tok
        found = "end of file" if t.kind == "eof" else f"'{t.text}'" if t.kind in ("kw", "ident") else "a " + {
            "desc": "description", "str": "string"}[t.kind]
        return _Fail(t.span, f"{message}, found {found}")

    def expect_kw(self, word: str) -> Token:
        if not self.tok.is_(word):
            raise self.fail(f"expected '{word}'")
        return self.advance()

    def ident(self, what: str = "gid") -> Token:
        if self.tok.kind != "ident":
            raise self.fail(f"expected {what}")
        return self.advance()

    def gid_list(self, clause: Token, allow_empty: bool) -> tuple:
        toks = []
        while self.tok.kind == "ident":
            toks.append(self.advance())
        if not toks and not allow_empty:
            raise self.fail(f"expected at least one gid after '{clause.text}'")
        return tuple(t.text for t in toks), tuple(t.span for t in toks)

    def description(self) -> MultiLangString:
        if self.tok.kind != "desc":
            raise self.fail("expected description")
        t = self.advance()
        try:
            return parse_description(t.text, self.file, t.body_line, t.body_col)
        except IalLexError as exc:
            raise _Fail(exc.span, exc.message) from None

    def at_element_start(self) -> bool:
        t = self.tok
        return t.kind == "eof" or (t.kind == "kw" and (t.text in ELEMENT_KEYWORDS or t.text == "module"))

    def recover(self):
        self.advance()
        while not self.at_element_start():
            self.advance()

    def run(self, diags: list) -> IalFile:
        name = None
        if self.tok.kind != "eof":
            try:
                self.expect_kw("module")
                name = self.ident("module name").text
            except _Fail as f:
                diags.append(error("E001", f.span, f.message))
                if not self.at_element_start():
                    self.recover()
        elements = []
        while self.tok.kind != "eof":
            start = self.i
            try:
                if self.tok.is_("module"):
                    raise self.fail("expected element command")
                elements.append(self.element())
            except _Fail as f:
                diags.append(error("E001", f.span, f.message))
                self.i = start
                self.recover()
        return IalFile(name, elements)

    def element(self):
        head = self.tok
        if head.kind != "kw" or head.text not in ELEMENT_KEYWORDS:
            raise self.fail("expected element command")
        self.advance()
        gid = self.ident()
        if head.text == "Claim":
            return self.claim(head, gid)
        if head.text in ("Inference", "Context", "Evidence"):
            return self.relationship(head, gid)
        return self.artifact(head, gid)

    def clauses(self, allowed: tuple, allow_decl: bool) -> dict:
        """Optional clauses in any order, up to the description; src must precede tgt."""
        got: dict = {}
        while True:
            t = self.tok
            if t.kind == "desc":
                break
            if t.kind != "kw":
                raise self.fail("expected clause or description")
            word = t.text
            key = "decl" if word in DECL_KEYWORDS else word
            if key == "decl" and not allow_decl or key != "decl" and word not in allowed:
                raise self.fail("unexpected keyword in this command")
            if key in got:
                raise self.fail(f"repeated '{word}' clause")
            self.advance()
            if key == "decl":
                got[key] = (DECL_KEYWORDS[word], t)
            elif word in ("isAbstract", "isCitation", "isCounter"):
                got[key] = (True, t)
            elif word in ("src", "tgt", "metaClaims"):
                if word == "src" and "tgt" in got:
                    raise _Fail(t.span, "'src' must precede 'tgt'")
                got[key] = (self.gid_list(t, allow_empty=(word == "metaClaims")), t)
            else:
                if self.tok.kind != "str":
                    raise self.fail(f"expected string after '{word}'")
                got[key] = (self.advance().text, t)
        return got

    def require(self, got: dict, key: str, what: str):
        if key not in got:
            raise self.fail(f"expected {what}")

    def claim(self, head, gid):
        got = self.clauses(("isAbstract", "isCitation", "metaClaims"), True)
        content = self.description()
        meta, spans = got.get("metaClaims", (((), ()), None))[0]
        return Claim(gid.text, content,
                     declaration=got.get("decl", (AssertionDeclaration.ASSERTED, None))[0],
                     is_abstract="isAbstract" in got, is_citation="isCitation" in got,
                     meta_claims=meta, span=head.span, meta_spans=spans)

    def relationship(self, head, gid):
        variant = RelKind(head.text)
        allowed = ("src", "tgt") if variant is RelKind.CONTEXT else ("src", "tgt", "isCounter")
        got = self.clauses(allowed, True)
        self.require(got, "decl", "assertion declaration")
        self.require(got, "src", "'src'")
        self.require(got, "tgt", "'tgt'")
        content = self.description()
        (src, src_spans), _ = got["src"]
        (tgt, tgt_spans), _ = got["tgt"]
        return AssertedRelationship(gid.text, variant, src, tgt, content, declaration=got["decl"][0],
                                    is_counter="isCounter" in got, span=head.span,
                                    src_spans=src_spans, tgt_spans=tgt_spans)

    def artifact(self, head, gid):
        variant = ArtifactKind(head.text)
        rel = variant is ArtifactKind.ARTIFACT_RELATION
        got = self.clauses(("src", "tgt") if rel else _ARTIFACT_CLAUSES[variant], False)
        if rel:
            self.require(got, "src", "'src'")
            self.require(got, "tgt", "'tgt'")
        if variant is ArtifactKind.RESOURCE:
            self.require(got, "location", "'location'")
            if not got["location"][0]:
                raise _Fail(got["location"][1].span, "empty resource location")
        content = self.description()
        kw = {_STR_FIELDS[k]: v for k, (v, _) in got.items() if k in _STR_FIELDS}
        if rel:
            (kw["src"], kw["src_spans"]), _ = got["src"]
            (kw["tgt"], kw["tgt_spans"]), _ = got["tgt"]
        return ArtifactElement(gid.text, variant, content, span=head.span, **kw)


def parse_ial_file(text: str, file: str = "<ial>") -> tuple:
    """Parse a whole file; returns (IalFile, diagnostics)."""
    lex_errors: list = []
    toks = _scan(text, file, lex_errors)
    diags = [error("E001", e.span, e.message) for e in lex_errors]
    parsed = _Parser(toks, file).run(diags)
    diags.sort(key=lambda d: d.sort_key())
    return parsed, diags


def parse_ial(text: str, file: str = "<ial>") -> tuple:
    """Elements in source order plus E001 diagnostics; malformed commands are skipped."""
    parsed, diags = parse_ial_file(text, file)
    return parsed.elements, diags


# -- printing ----------------------------------------------------------------

def format_description(content: MultiLangString) -> str:
    return f'"""{content.source()}"""'


def format_element(elem) -> str:
    parts = [elem.kind, elem.gid]
    if isinstance(elem, Claim):
        if elem.is_abstract:
            parts.append("isAbstract")
        if elem.is_citation:
            parts.append("isCitation")
        if elem.meta_claims:
            parts += ["metaClaims", *elem.meta_claims]
        if elem.declaration is not AssertionDeclaration.ASSERTED:
            parts.append(elem.declaration.value)
    elif isinstance(elem, AssertedRelationship):
        parts.append(elem.declaration.value)
        if elem.is_counter:
            parts.append("isCounter")
        parts += ["src", *elem.src, "tgt", *elem.tgt]
    else:
        for word in _ARTIFACT_CLAUSES[elem.variant]:
            v = getattr(elem, _STR_FIELDS[word])
            if v is not None:
                parts += [word, f'"{v}"']
        if elem.variant is ArtifactKind.ARTIFACT_RELATION:
            parts += ["src", *elem.src, "tgt", *elem.tgt]
    parts.append(format_description(elem.content))
    return " ".join(parts)


def format_file(name: str, elements) -> str:
    lines = [f"module {name}", ""]
    lines += [format_element(e) for e in elements]
    return "\n".join(lines) + "\n"
