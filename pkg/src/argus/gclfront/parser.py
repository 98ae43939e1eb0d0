"""Recursive-descent parser and checker for .gcl modules.

Names are resolved while parsing, so every declaration must follow the
declarations it uses. Named predicates and programs are expanded in place;
a declaration may carry a scope (``def Op @ tis := ...``), in which case its
variable paths are relative to that namespace and it may only be used where
that namespace is the current state space (inside ``frame tis in (...)`` or
``lift(tis, ...)``).
"""
from __future__ import annotations

from contextlib import contextmanager

from ..diagnostics import SourceSpan, error
from ..kernel.expr import (NONE, And, Bound, Eq, Exists, Forall, Implies, Leq, Lit, Lt, Member,
                           Neq, Not, Or, Plus, SetLit, SomeOf, The, Var, WpTerm, coerce_up)
from ..kernel.prog import Abort, Assign, Frame, Guard, Havoc, Skip, choice, normalize, seq
from ..kernel.types import (BoolT, EnumT, IntT, OptionT, Schema, SchemaError, SetT, format_path)
from ..kernel.typing import GclTypeError, elaborate_expr, elaborate_prog
from .lexer import GclLexError, Token, tokenize
from .module import EQUIV, HOARE, NMODS, VALID, GclModule, Obligation

_DECL_KEYWORDS = ("state", "pred", "def", "obligation")


class _Fail(Exception):
    def __init__(self, code: str, span: SourceSpan, message: str):
        super().__init__(message)
        self.code = code
        self.span = span
        self.message = message


class _Parser:
    def __init__(self, tokens: list, file: str):
        self.toks = tokens
        self.i = 0
        self.file = file
        self.diags: list = []
        self.schema: Schema | None = None
        self.preds: dict = {}
        self.progs: dict = {}
        self.scopes: dict = {}
        self.obligations: dict = {}
        self.ctors: set = set()
        self.scope: tuple = ()
        self.binders: dict = {}

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.is_(text)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.syntax(f"expected '{text}'")
        return self.advance()

    def ident(self, what="identifier") -> Token:
        if self.tok.kind != "ident":
            raise self.syntax(f"expected {what}")
        return self.advance()

    def syntax(self, message: str) -> _Fail:
        t = self.tok
        found = "end of file" if t.kind == "eof" else repr(t.text)
        return _Fail("E001", t.span, f"{message}, found {found}")

    # -- module --------------------------------------------------------------

    def module(self) -> GclModule | None:
        if self.tok.kind == "eof":
            raise _Fail("E001", self.tok.span, "empty file: expected 'gclmodule'")
        self.expect("gclmodule")
        name = self.ident("module name").text
        self.expect("{")
        while not self.at("}") and self.tok.kind != "eof":
            start = self.i
            try:
                self.decl()
            except _Fail as f:
                self.diags.append(error(f.code, f.span, f.message))
                self.recover(start)
        if self.tok.kind == "eof":
            if not self.diags:
                raise self.syntax("expected '}'")
        else:
            self.expect("}")
            if self.tok.kind != "eof":
                raise self.syntax("expected end of file")
        if self.schema is None:
            raise _Fail("E001", self.tok.span, "module declares no state")
        return GclModule(name, self.schema, {n: e for n, (_, e) in self.preds.items()},
                         {n: p for n, (_, p) in self.progs.items()}, self.obligations,
                         dict(self.scopes))

    def recover(self, start: int):
        self.scope = ()
        self.binders = {}
        if self.i == start:
            self.advance()
        while self.tok.kind != "eof" and not any(self.at(k) for k in _DECL_KEYWORDS):
            if self.at("}") and self.peek().kind == "eof":
                return
            self.advance()

    def decl(self):
        if self.at("state"):
            self.state_decl()
            return
        if self.schema is None:
            raise self.syntax("expected 'state' block before other declarations")
        if self.accept("pred"):
            name, scope = self.decl_head()
            self.expect(":=")
            with self.in_scope(scope):
                e = self.typed_expr(self.expr(), name)
            self.preds[name.text] = (scope, e)
            self.note_scope(name.text, scope)
        elif self.accept("def"):
            name, scope = self.decl_head()
            self.expect(":=")
            with self.in_scope(scope):
                p = self.typed_prog(self.prog(), name)
            self.progs[name.text] = (scope, p)
            self.note_scope(name.text, scope)
        elif self.accept("obligation"):
            self.obligation()
        else:
            raise self.syntax("expected a declaration")

    def note_scope(self, name, scope):
        if scope:
            self.scopes[name] = scope

    def decl_head(self):
        name = self.ident("declaration name")
        if name.text in self.preds or name.text in self.progs:
            raise _Fail("E103", name.span, f"duplicate declaration {name.text}")
        scope = ()
        if self.accept("@"):
            tok = self.tok
            scope = self.path()
            if not self.schema.is_namespace(scope) or not scope:
                raise _Fail("E101", tok.span, f"unknown namespace {format_path(scope)}")
        return name, scope

    @contextmanager
    def in_scope(self, scope):
        saved = self.scope
        self.scope = scope
        try:
            yield
        finally:
            self.scope = saved

    @property
    def subschema(self) -> Schema:
        return self.schema.subschema(self.scope) if self.scope else self.schema

    def typed_expr(self, e, anchor: Token):
        try:
            return elaborate_expr(e, self.subschema, self.binders)
        except GclTypeError as exc:
            raise _Fail("E102", anchor.span, f"type error in {anchor.text}: {exc}") from None

    def typed_prog(self, p, anchor: Token):
        try:
            return normalize(elaborate_prog(p, self.subschema))
        except GclTypeError as exc:
            raise _Fail("E102", anchor.span, f"type error in {anchor.text}: {exc}") from None

    # -- state ---------------------------------------------------------------

    def state_decl(self):
        start = self.expect("state")
        leaves = list(self.schema.leaves) if self.schema is not None else []
        self.expect("{")
        self.var_block((), leaves, set(p for p, _ in leaves))
        self.expect("}")
        try:
            self.schema = Schema(leaves)
        except SchemaError as exc:
            raise _Fail("E102", start.span, str(exc)) from None

    def var_block(self, prefix, leaves, seen):
        while not self.at("}"):
            if self.accept("ns"):
                name = self.ident("namespace name")
                path = prefix + (name.text,)
                if path in seen:
                    raise _Fail("E103", name.span, f"duplicate name {format_path(path)}")
                seen.add(path)
                self.expect("{")
                self.var_block(path, leaves, seen)
                self.expect("}")
            else:
                name = self.ident("variable or 'ns'")
                path = prefix + (name.text,)
                if path in seen:
                    raise _Fail("E103", name.span, f"duplicate name {format_path(path)}")
                seen.add(path)
                self.expect(":")
                ty = self.type_()
                self.expect(";")
                leaves.append((path, ty))

    def type_(self):
        if self.accept("bool"):
            return BoolT()
        if self.accept("int"):
            self.expect("[")
            lo = self.integer()
            self.expect("..")
            hi = self.integer()
            tok = self.expect("]")
            if lo > hi:
                raise _Fail("E102", tok.span, f"empty integer range {lo}..{hi}")
            return IntT(lo, hi)
        if self.accept("enum"):
            return self.enum_body()
        if self.accept("option"):
            return OptionT(self.type_())
        if self.accept("set"):
            return SetT(self.enum_body())
        raise self.syntax("expected a type")

    def enum_body(self):
        self.expect("(")
        names = [self.ident("constructor").text]
        while self.accept(","):
            names.append(self.ident("constructor").text)
        tok = self.expect(")")
        if len(set(names)) != len(names):
            raise _Fail("E103", tok.span, "duplicate constructor")
        self.ctors.update(names)
        return EnumT(tuple(names))

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.syntax("expected an integer")
        return int(self.advance().text)

    def path(self) -> tuple:
        parts = [self.ident("name").text]
        while self.at(".") and self.peek().kind == "ident":
            self.advance()
            parts.append(self.advance().text)
        return tuple(parts)

    # -- obligations ---------------------------------------------------------

    def obligation(self):
        name = self.ident("obligation name")
        if name.text in self.obligations:
            raise _Fail("E103", name.span, f"duplicate obligation {name.text}")
        self.expect(":")
        if self.accept("hoare"):
            self.expect("{")
            pre = self.typed_expr(self.expr(), name)
            self.expect("}")
            ref = self.ident("program name")
            prog = self.named_prog(ref)
            self.expect("{")
            post = self.typed_expr(self.expr(), name)
            self.expect("}")
            ob = Obligation(name.text, HOARE, pre=pre, prog=prog, post=post, prog_name=ref.text)
        elif self.accept("valid"):
            ob = Obligation(name.text, VALID, goal=self.typed_expr(self.expr(), name))
        elif self.accept("nmods"):
            self.expect("(")
            prog = self.typed_prog(self.prog(), name)
            self.expect(")")
            self.expect("{")
            vars_ = [self.leaf_path()]
            while self.accept(","):
                vars_.append(self.leaf_path())
            self.expect("}")
            ob = Obligation(name.text, NMODS, prog=prog, vars=tuple(vars_))
        elif self.accept("equiv"):
            self.expect("(")
            a = self.typed_prog(self.prog(), name)
            self.expect(")")
            self.expect("(")
            b = self.typed_prog(self.prog(), name)
            self.expect(")")
            ob = Obligation(name.text, EQUIV, prog=a, other=b)
        else:
            raise self.syntax("expected 'hoare', 'valid', 'nmods' or 'equiv'")
        self.obligations[name.text] = ob

    def leaf_path(self) -> tuple:
        tok = self.tok
        p = self.path()
        if not self.schema.is_leaf(p):
            raise _Fail("E101", tok.span, f"unknown variable {format_path(p)}")
        return p

    def named_prog(self, ref: Token):
        entry = self.progs.get(ref.text)
        if entry is None:
            if ref.text in self.preds:
                raise _Fail("E102", ref.span, f"{ref.text} is a predicate, not a program")
            raise _Fail("E101", ref.span, f"undeclared program {ref.text}")
        scope, p = entry
        if scope != self.scope:
            where = format_path(scope) or "the root state"
            raise _Fail("E102", ref.span, f"program {ref.text} is declared over {where}")
        return p

    # -- programs ------------------------------------------------------------

    def prog(self):
        branches = [self.seq_prog()]
        while self.accept("[]"):
            branches.append(self.seq_prog())
        return choice(*branches)

    def seq_prog(self):
        steps = [self.guard_prog()]
        while self.accept(";"):
            steps.append(self.guard_prog())
        return seq(*steps)

    def guard_prog(self):
        if self.guard_ahead():
            cond = self.expr()
            self.expect("->")
            return Guard(cond, self.guard_prog())
        return self.prim_prog()

    def guard_ahead(self) -> bool:
        """Whether the tokens up to the next program delimiter contain a top-level '->'."""
        depth = 0
        j = self.i
        while True:
            t = self.toks[j]
            if t.kind == "eof":
                return False
            if t.kind == "sym" and t.text in ("(", "{", "["):
                depth += 1
            elif t.kind == "sym" and t.text in (")", "}", "]"):
                depth -= 1
                if depth < 0:
                    return False
            elif depth == 0:
                if t.is_("->"):
                    return True
                if t.kind == "sym" and t.text in (";", "[]", ":="):
                    return False
                if t.kind == "kw" and t.text in _DECL_KEYWORDS + ("where", "skip", "abort", "frame", "havoc"):
                    return False
            j += 1

    def prim_prog(self):
        if self.accept("skip"):
            return Skip()
        if self.accept("abort"):
            return Abort()
        if self.accept("("):
            p = self.prog()
            self.expect(")")
            return p
        if self.accept("frame"):
            tok = self.tok
            ns = self.path()
            if not self.subschema.is_namespace(ns):
                raise _Fail("E101", tok.span, f"unknown namespace {format_path(ns)}")
            self.expect("in")
            self.expect("(")
            with self.in_scope(self.scope + ns):
                body = self.prog()
            self.expect(")")
            return Frame(ns, body)
        if self.accept("havoc"):
            tok = self.tok
            target = self.path()
            if not self.subschema.is_leaf(target):
                raise _Fail("E101", tok.span, f"unknown variable {format_path(target)}")
            self.expect("where")
            saved = self.binders
            self.binders = {**saved, "new": self.subschema.leaf_type(target)}
            try:
                c = self.expr()
            finally:
                self.binders = saved
            return Havoc(target, c)
        if self.tok.kind == "ident":
            if self.peek().is_(":=") or self.peek().is_("."):
                tok = self.tok
                target = self.path()
                if self.at(":="):
                    self.advance()
                    if not self.subschema.is_leaf(target):
                        raise _Fail("E101", tok.span, f"unknown variable {format_path(target)}")
                    return Assign(target, self.expr())
                raise self.syntax("expected ':='")
            return self.named_prog(self.advance())
        raise self.syntax("expected a program")

    # -- expressions ---------------------------------------------------------

    def expr(self):
        if self.at("exists") or self.at("forall"):
            return self.quant()
        left = self.imp()
        while self.accept("<=>"):
            left = Eq(left, self.imp())
        return left

    def quant(self):
        kind = Exists if self.advance().text == "exists" else Forall
        name = self.ident("bound name").text
        self.expect(":")
        ty = self.type_()
        self.expect(".")
        saved = self.binders
        self.binders = {**saved, name: ty}
        try:
            body = self.expr()
        finally:
            self.binders = saved
        return kind(name, ty, body)

    def imp(self):
        left = self.or_()
        if self.accept("=>"):
            return Implies(left, self.imp_or_quant())
        return left

    def imp_or_quant(self):
        if self.at("exists") or self.at("forall"):
            return self.quant()
        return self.imp()

    def or_(self):
        args = [self.and_()]
        while self.accept("or"):
            args.append(self.and_())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def and_(self):
        args = [self.not_()]
        while self.accept("and"):
            args.append(self.not_())
        return args[0] if len(args) == 1 else And(tuple(args))

    def not_(self):
        if self.accept("not"):
            return Not(self.not_())
        return self.cmp()

    def cmp(self):
        left = self.sum()
        t = self.tok
        if t.kind == "sym" and t.text in ("=", "!=", "<", "<=", ">", ">="):
            self.advance()
            right = self.sum()
            return {"=": lambda: Eq(left, right), "!=": lambda: Neq(left, right),
                    "<": lambda: Lt(left, right), "<=": lambda: Leq(left, right),
                    ">": lambda: Lt(right, left), ">=": lambda: Leq(right, left)}[t.text]()
        if self.accept("in"):
            return Member(left, self.sum())
        return left

    def sum(self):
        left = self.atom()
        while self.accept("+"):
            left = Plus(left, self.atom())
        return left

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Lit(int(t.text))
        if self.accept("true"):
            return Lit(True)
        if self.accept("false"):
            return Lit(False)
        if self.accept("none"):
            return NONE
        if self.at("exists") or self.at("forall"):
            return self.quant()
        if self.accept("some"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return SomeOf(e)
        if self.accept("the"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return The(e)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("{"):
            elems = []
            if not self.at("}"):
                elems.append(self.expr())
                while self.accept(","):
                    elems.append(self.expr())
            self.expect("}")
            return SetLit(tuple(elems))
        if self.at("wp") or self.at("wlp"):
            kind = self.advance().text
            self.expect("(")
            ref = self.ident("program name")
            prog = self.named_prog(ref)
            self.expect(",")
            post = self.expr()
            self.expect(")")
            return WpTerm(kind, ref.text, prog, post)
        if self.accept("lift"):
            self.expect("(")
            tok = self.tok
            ns = self.path()
            if not self.subschema.is_namespace(ns) or not ns:
                raise _Fail("E101", tok.span, f"unknown namespace {format_path(ns)}")
            self.expect(",")
            with self.in_scope(self.scope + ns):
                inner = self.expr()
            self.expect(")")
            return coerce_up(inner, ns)
        if t.kind == "ident":
            return self.name()
        raise self.syntax("expected an expression")

    def name(self):
        tok = self.tok
        p = self.path()
        if len(p) == 1 and p[0] in self.binders:
            return Bound(p[0])
        if self.subschema.is_leaf(p):
            return Var(p)
        if len(p) == 1 and p[0] in self.preds:
            scope, e = self.preds[p[0]]
            if scope != self.scope:
                where = format_path(scope) or "the root state"
                raise _Fail("E102", tok.span, f"predicate {p[0]} is declared over {where}")
            return e
        if len(p) == 1 and p[0] in self.ctors:
            return Lit(p[0])
        if self.subschema.is_namespace(p):
            raise _Fail("E102", tok.span, f"{format_path(p)} is a namespace, not a variable")
        raise _Fail("E101", tok.span, f"unresolved name {format_path(p)}")


def parse_gcl(text: str, file: str = "<gcl>") -> tuple:
    """Parse and check a .gcl module; returns ``(module or None, diagnostics)``."""
    try:
        toks = tokenize(text, file)
    except GclLexError as exc:
        return None, [error("E001", exc.span, exc.message)]
    p = _Parser(toks, file)
    try:
        mod = p.module()
    except _Fail as f:
        p.diags.append(error(f.code, f.span, f.message))
        return None, p.diags
    return mod, p.diags
