"""Tokenizer, term reader and term printer for the functor-and-parentheses notation.

Lowercase (or digit) identifiers are functors and atoms, identifiers starting
with an uppercase letter or underscore are variables, and ``_`` alone is an
anonymous variable.  Whitespace and ``%`` comments are insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .terms import Struct, Term, Var, VarSource

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<arrow>-->)
  | (?P<name>[A-Za-z0-9_]+)
  | (?P<punct>[(),.\[\]{}])
    """,
    re.VERBOSE,
)


class TermSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "punct", "arrow", "eof"
    value: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def is_variable_name(name: str) -> bool:
    return bool(name) and (name[0].isupper() or name[0] == "_")


class TermParser:
    """Recursive-descent reader over a token list.

    Variables with the same name share one :class:`Var` until
    :meth:`new_scope` is called; each fact or clause gets its own scope.
    Without a ``source`` a named variable's id is its name, so separately
    read terms agree on it, and each ``_`` is a distinct variable.
    """

    def __init__(self, text: str, source: Optional[VarSource] = None):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.source = source
        self.scope: dict[str, Var] = {}

    def new_scope(self) -> None:
        self.scope = {}

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def at(self, value: str) -> bool:
        tok = self.peek
        return tok.kind in ("punct", "arrow") and tok.value == value

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise TermSyntaxError(f"{message}, found {found}", tok.offset, self.text)

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.error(f"expected {value!r}")
        return self.advance()

    def at_eof(self) -> bool:
        return self.peek.kind == "eof"

    def variable(self, name: str) -> Var:
        if self.source is None:
            return Var(object() if name == "_" else name, name)
        if name == "_":
            return self.source.fresh("_")
        v = self.scope.get(name)
        if v is None:
            v = self.scope[name] = self.source.fresh(name)
        return v

    def term(self) -> Term:
        tok = self.peek
        if tok.kind != "name":
            self.error("expected term")
        self.advance()
        if is_variable_name(tok.value):
            return self.variable(tok.value)
        if not self.at("("):
            return Struct(tok.value)
        self.advance()
        args = [self.term()]
        while self.at(","):
            self.advance()
            args.append(self.term())
        self.expect(")")
        return Struct(tok.value, tuple(args))


def read_term(text: str, source: Optional[VarSource] = None) -> Term:
    """Parse exactly one term from ``text``."""
    p = TermParser(text, source)
    t = p.term()
    if not p.at_eof():
        p.error("expected end of input")
    return t


class VarNamer:
    """Assigns printable, collision-free names to variables for one output job."""

    def __init__(self):
        self.names: dict[Var, str] = {}
        self.used: set[str] = set()

    def __call__(self, v: Var) -> str:
        name = self.names.get(v)
        if name is not None:
            return name
        base = v.name if v.name and is_variable_name(v.name) and v.name != "_" else "_G"
        name = base
        n = 1
        while name in self.used:
            name = f"{base}{n}" if base.startswith("_") else f"{base}_{n}"
            n += 1
        self.used.add(name)
        self.names[v] = name
        return name


def print_term(t: Term, namer: Optional[VarNamer] = None) -> str:
    namer = namer or VarNamer()
    if isinstance(t, Var):
        return namer(t)
    if not t.args:
        return t.functor
    return t.functor + "(" + ",".join(print_term(a, namer) for a in t.args) + ")"
