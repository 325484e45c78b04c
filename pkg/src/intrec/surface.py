"""Named lambda syntax compiled to kernel codes.

Grammar::

    expr  ::= 'fun' NAME+ '->' expr
            | 'let' NAME NAME* '=' expr 'in' expr
            | 'let' 'rec' NAME NAME+ '=' expr 'in' expr
            | 'ifz' expr 'then' expr 'else' expr
            | atom+
    atom  ::= NAME | NAT | '(' expr ')'

``ifz c then a else b`` takes the ``then`` branch when ``c`` is 0.  Only the
chosen branch runs.  ``let`` is strict; ``let rec`` goes through the Z
combinator.  ``--`` starts a comment.

Predefined names: the combinators ``I K S B Y Z pair fst snd omega``, the
primitives ``succ pred clock``, and ``add sub mul force``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from . import kernel
from .kernel import App, Code, Lam, Lit, Term, Var

__all__ = ["CompileError", "ParseError", "ScopeError", "compile", "compile_term", "prelude"]


class CompileError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


class ParseError(CompileError):
    pass


class ScopeError(CompileError):
    pass


_TOKEN = re.compile(r"\s+|--[^\n]*|(?P<arrow>->)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[()=\\.])")
_KEYWORDS = {"fun", "let", "rec", "in", "ifz", "then", "else"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Tok]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError("unexpected character %r" % src[pos], line, pos - line_start + 1)
        kind = m.lastgroup
        if kind is not None:
            text = m.group(kind)
            if kind == "name" and text in _KEYWORDS:
                kind = "kw"
            out.append(_Tok(kind, text, line, pos - line_start + 1))
        chunk = m.group(0)
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, tokens: list[_Tok], globals_: Mapping[str, Term]):
        self.toks = tokens
        self.i = 0
        self.globals = globals_

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            raise ParseError("expected %s, found %r" % (want, tok.text or "end of input"), tok.line, tok.col)
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def names(self, at_least: int) -> list[str]:
        out = []
        while self.at("name"):
            out.append(self.take("name").text)
        if len(out) < at_least:
            tok = self.peek()
            raise ParseError("expected a parameter name", tok.line, tok.col)
        return out

    def expr(self, scope: list[str]) -> Term:
        if self.at("kw", "fun") or self.at("sym", "\\"):
            self.i += 1
            params = self.names(1)
            if self.at("sym", "."):
                self.i += 1
            else:
                self.take("arrow")
            return self._lams(params, scope)
        if self.at("kw", "let"):
            self.i += 1
            rec = self.at("kw", "rec")
            if rec:
                self.i += 1
            name = self.take("name").text
            params = self.names(1 if rec else 0)
            self.take("sym", "=")
            inner = scope + [name] if rec else scope
            value = self._lams(params, inner)
            if rec:
                value = App(self.globals["Z"], Lam(value))
            self.take("kw", "in")
            body = self.expr(scope + [name])
            return App(Lam(body), value)
        if self.at("kw", "ifz"):
            self.i += 1
            cond = self.expr(scope)
            self.take("kw", "then")
            yes = self.expr(scope + ["_"])
            self.take("kw", "else")
            no = self.expr(scope + ["_"])
            return App(App(App(App(kernel.IFZ, cond), Lam(yes)), Lam(no)), Lit(0))
        return self.application(scope)

    def _lams(self, params: list[str], scope: list[str]) -> Term:
        if not params:
            return self.expr(scope)
        body = self.expr(scope + params)
        for _ in params:
            body = Lam(body)
        return body

    def application(self, scope: list[str]) -> Term:
        head = self.atom(scope)
        while self.at("name") or self.at("num") or self.at("sym", "("):
            head = App(head, self.atom(scope))
        if self.at("kw", "fun") or self.at("sym", "\\"):
            head = App(head, self.expr(scope))
        return head

    def atom(self, scope: list[str]) -> Term:
        tok = self.peek()
        if tok.kind == "num":
            self.i += 1
            return Lit(int(tok.text))
        if tok.kind == "name":
            self.i += 1
            for depth, name in enumerate(reversed(scope)):
                if name == tok.text:
                    return Var(depth)
            if tok.text in self.globals:
                return self.globals[tok.text]
            raise ScopeError("unbound name %r" % tok.text, tok.line, tok.col)
        if tok.kind == "sym" and tok.text == "(":
            self.i += 1
            e = self.expr(scope)
            self.take("sym", ")")
            return e
        raise ParseError("unexpected %r" % (tok.text or "end of input"), tok.line, tok.col)


_BUILTINS = {
    "I": kernel.I, "K": kernel.K, "S": kernel.S, "B": kernel.B, "Y": kernel.Y, "Z": kernel.Z,
    "pair": kernel.PAIR, "fst": kernel.FST, "snd": kernel.SND, "omega": kernel.OMEGA,
    "succ": Code(kernel.SUCC), "pred": Code(kernel.PRED), "clock": Code(kernel.CLOCK),
}

_PRELUDE_SRC = [
    ("add", "let rec add a b = ifz a then b else succ (add (pred a) b) in add"),
    ("sub", "let rec sub a b = ifz b then a else sub (pred a) (pred b) in sub"),
    ("mul", "let rec mul a b = ifz a then 0 else add b (mul (pred a) b) in mul"),
    ("force", "fun r -> r 0"),
]
_prelude: dict[str, Term] | None = None


def prelude() -> dict[str, Term]:
    global _prelude
    if _prelude is None:
        table = {name: c.term for name, c in _BUILTINS.items()}
        for name, src in _PRELUDE_SRC:
            table[name] = _compile(src, table)
        _prelude = table
    return dict(_prelude)


def _compile(src: str, globals_: Mapping[str, Term]) -> Term:
    parser = _Parser(_tokenize(src), globals_)
    term = parser.expr([])
    if not parser.at("eof"):
        tok = parser.peek()
        raise ParseError("trailing input %r" % tok.text, tok.line, tok.col)
    return term


def compile_term(src: str, env: Mapping[str, Code | Term] | None = None) -> Term:
    table = prelude()
    for name, value in (env or {}).items():
        table[name] = value.term if isinstance(value, Code) else value
    return _compile(src, table)


def compile(src: str, env: Mapping[str, Code | Term] | None = None) -> Code:
    """Compile surface text to the code of a closed term.

    ``env`` binds extra global names to codes; they are spliced in as terms.
    """
    return Code(compile_term(src, env))
