"""A small text format for computads, map assignments and witness tables.

    computad I {
      max_dim 2;
      0;
      1;
      f : 0 -> 1;
      "g-" : 1 -> 0;
      "g+" : 1 -> 0;
      "h+" : id(0) -> comp0(f, "g+");
      "h-" : comp0("g-", f) -> id(1);
    }

A declaration without boundary is an object; otherwise the dimension is one
more than that of its source.  Names that are not plain identifiers (signs,
commas, parentheses, keywords) are double-quoted.  ``#`` starts a comment.

Assignments are ``name := term`` and witness entries
``cell := (g-, g+, h+, h-)``, one per line (a trailing ``;`` is allowed).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .core import Comp, Computad, ComputadError, Gen, Generator, Id, Term, generators_in

KEYWORDS = {"computad", "max_dim", "id"}
IDENT_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.']*")
COMP_RE = re.compile(r"comp(\d+)")

TOKEN_SPEC = [
    ("SKIP", r"[ \t\r]+|#[^\n]*"),
    ("NEWLINE", r"\n"),
    ("STRING", r'"(?:[^"\\\n]|\\.)*"'),
    ("ASSIGN", r":="),
    ("ARROW", r"->"),
    ("IDENT", IDENT_RE.pattern),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COLON", r":"),
    ("SEMI", r";"),
    ("COMMA", r","),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in TOKEN_SPEC))


class ParseError(ComputadError):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        where = f"line {line}, column {col}"
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{where}: {message}{hint}")
        self.line = line
        self.col = col
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "NEWLINE":
            line += 1
            line_start = m.end()
        elif kind != "SKIP":
            value = m.group()
            if kind == "STRING":
                value = re.sub(r"\\(.)", r"\1", value[1:-1])
                kind = "NAME"
            elif kind == "IDENT":
                kind = "KEYWORD" if value in KEYWORDS or COMP_RE.fullmatch(value) else "NAME"
            tokens.append(Token(kind, value, line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


@dataclass
class DslDocument:
    blocks: dict[str, Computad] = field(default_factory=dict)

    def first(self) -> Computad:
        if not self.blocks:
            raise ComputadError("document has no computad blocks")
        return next(iter(self.blocks.values()))


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, *expected: str):
        tok = self.peek()
        got = "end of input" if tok.kind == "EOF" else repr(tok.value)
        raise ParseError(f"{message}, got {got}", tok.line, tok.col, expected)

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (value is not None and tok.value != value):
            self.fail("unexpected token", value or kind.lower())
        return self.advance()

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    # -- terms

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "NAME":
            self.advance()
            return Gen(tok.value)
        if tok.kind == "KEYWORD" and tok.value == "id":
            self.advance()
            self.expect("LPAREN")
            inner = self.term()
            self.expect("RPAREN")
            return Id(inner)
        if tok.kind == "KEYWORD" and COMP_RE.fullmatch(tok.value):
            self.advance()
            level = int(COMP_RE.fullmatch(tok.value).group(1))
            self.expect("LPAREN")
            parts = [self.term()]
            while self.at("COMMA"):
                self.advance()
                parts.append(self.term())
            if len(parts) < 2:
                self.fail(f"comp{level} needs at least two parts", "','")
            self.expect("RPAREN")
            return Comp(level, parts)
        self.fail("expected a term", "name", "id(...)", "comp<j>(...)")

    # -- computad blocks

    def document(self) -> DslDocument:
        doc = DslDocument()
        while not self.at("EOF"):
            start = self.peek()
            name, c = self.block()
            if name in doc.blocks:
                raise ParseError(f"duplicate block {name!r}", start.line, start.col)
            doc.blocks[name] = c
        return doc

    def block(self) -> tuple[str, Computad]:
        self.expect("KEYWORD", "computad")
        name = self.expect("NAME").value
        self.expect("LBRACE")
        max_dim: Optional[int] = None
        gens: list[Generator] = []
        dims: dict[str, int] = {}
        while not self.at("RBRACE"):
            if self.at("KEYWORD", "max_dim"):
                self.advance()
                tok = self.expect("NAME")
                if not tok.value.isdigit():
                    raise ParseError("max_dim needs a natural number", tok.line, tok.col)
                max_dim = int(tok.value)
                self.expect("SEMI")
                continue
            tok = self.peek()
            if tok.kind != "NAME":
                self.fail("expected a declaration", "name", "max_dim", "'}'")
            self.advance()
            if tok.value in dims:
                raise ParseError(f"duplicate generator {tok.value!r}", tok.line, tok.col)
            if self.at("COLON"):
                self.advance()
                src_tok = self.peek()
                src = self.term()
                self.expect("ARROW")
                tgt_tok = self.peek()
                tgt = self.term()
                self._declared(tgt, dims, tgt_tok)
                d = self._dim(src, dims, src_tok) + 1
                gens.append(Generator(tok.value, d, src, tgt))
            else:
                d = 0
                gens.append(Generator(tok.value, 0))
            dims[tok.value] = d
            self.expect("SEMI")
        self.expect("RBRACE")
        if max_dim is None:
            max_dim = max(dims.values(), default=0)
        try:
            return name, Computad(max_dim, tuple(gens))
        except ComputadError as exc:
            raise ParseError(str(exc), self.peek().line, self.peek().col) from None

    def _declared(self, t: Term, dims: dict[str, int], tok: Token) -> None:
        for name in generators_in(t):
            if name not in dims:
                raise ParseError(f"undeclared generator {name!r}", tok.line, tok.col)

    def _dim(self, t: Term, dims: dict[str, int], tok: Token) -> int:
        self._declared(t, dims, tok)
        if isinstance(t, Gen):
            if t.name not in dims:
                raise ParseError(f"undeclared generator {t.name!r}", tok.line, tok.col)
            return dims[t.name]
        if isinstance(t, Id):
            return self._dim(t.inner, dims, tok) + 1
        return self._dim(t.parts[0], dims, tok)

    # -- assignment tables

    def assignments(self) -> dict[str, Term]:
        out: dict[str, Term] = {}
        while not self.at("EOF"):
            tok = self.expect("NAME")
            self.expect("ASSIGN")
            out[tok.value] = self.term()
            if self.at("SEMI"):
                self.advance()
        return out

    def witnesses(self) -> list[tuple[Term, tuple[Term, Term, Term, Term]]]:
        out = []
        while not self.at("EOF"):
            cell = self.term()
            self.expect("ASSIGN")
            self.expect("LPAREN")
            data = [self.term()]
            for _ in range(3):
                self.expect("COMMA")
                data.append(self.term())
            self.expect("RPAREN")
            if self.at("SEMI"):
                self.advance()
            out.append((cell, tuple(data)))
        return out


def parse_dsl(text: str) -> DslDocument:
    return Parser(text).document()


def parse_term(text: str) -> Term:
    p = Parser(text)
    t = p.term()
    p.expect("EOF")
    return t


def parse_assignments(text: str) -> dict[str, Term]:
    return Parser(text).assignments()


def parse_witnesses(text: str):
    return Parser(text).witnesses()


# ---------------------------------------------------------------------------
# printing


def format_name(name: str) -> str:
    if IDENT_RE.fullmatch(name) and name not in KEYWORDS and not COMP_RE.fullmatch(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_term(t: Term) -> str:
    if isinstance(t, Gen):
        return format_name(t.name)
    if isinstance(t, Id):
        return f"id({format_term(t.inner)})"
    return f"comp{t.level}(" + ", ".join(format_term(p) for p in t.parts) + ")"


def format_computad(c: Computad, name: str = "C") -> str:
    lines = [f"computad {format_name(name)} {{", f"  max_dim {c.max_dim};"]
    for g in c.generators:
        if g.dim == 0:
            lines.append(f"  {format_name(g.name)};")
        else:
            lines.append(f"  {format_name(g.name)} : {format_term(g.src)} -> {format_term(g.tgt)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_document(doc: DslDocument) -> str:
    return "\n".join(format_computad(c, name) for name, c in doc.blocks.items())


def format_assignments(assign: dict[str, Term]) -> str:
    return "".join(f"{format_name(n)} := {format_term(t)}\n" for n, t in assign.items())


def format_witnesses(entries) -> str:
    return "".join(f"{format_term(cell)} := (" + ", ".join(format_term(t) for t in data) + ")\n"
                   for cell, data in entries)
