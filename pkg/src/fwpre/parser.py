"""Recursive-descent parser for FWHILE source text.

Concrete syntax::

    stmt   := simple (';' simple)* [';']
    simple := IDENT ':=' aexpr
            | 'skip'
            | 'if' bexpr 'then' '{' stmt '}' 'else' '{' stmt '}'
            | 'while' bexpr 'do' '{' stmt '}'
            | 'fork' '{' ('{' stmt '}' [';'])+ '}'
    aexpr  := lit [('+' | '-' | '*') lit]
    bexpr  := lit ('=' | '<=' | '<') lit
    lit    := IDENT | ['-'] INT

``//`` starts a comment running to the end of the line. The unicode
symbols ``≤`` and ``−`` are accepted as spellings of ``<=`` and ``-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    RESERVED,
    Assign,
    BinOp,
    Compare,
    Const,
    Fork,
    If,
    Program,
    Seq,
    Skip,
    SourceSpan,
    Var,
    While,
)


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, text: str = ""):
        self.message = message or "parse error"
        self.span = span
        self.line, self.column = _line_col(text, span.start)
        super().__init__(f"{self.line}:{self.column}: {self.message}")


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'int', 'kw', 'sym', 'eof'
    text: str
    start: int
    end: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>:=|<=|≤|[-−+*=<;{}])
    """,
    re.VERBOSE,
)

_SYMBOL_ALIASES = {"≤": "<=", "−": "-"}


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1), text)
        kind = m.lastgroup
        if kind != "ws":
            word = m.group()
            if kind == "ident" and word in RESERVED:
                kind = "kw"
            elif kind == "sym":
                word = _SYMBOL_ALIASES.get(word, word)
            tokens.append(Token(kind, word, m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("eof", "", len(text), len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.next_id = 1

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _describe(self, tok):
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def error(self, expected: str):
        tok = self.tok
        raise ParseError(
            f"expected {expected}, found {self._describe(tok)}",
            SourceSpan(tok.start, tok.end),
            self.text,
        )

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(repr(text))
        tok = self.tok
        self.pos += 1
        return tok

    def fresh_id(self) -> int:
        n = self.next_id
        self.next_id += 1
        return n

    # grammar

    def program(self) -> Program:
        body = self.stmt()
        if self.tok.kind != "eof":
            self.error("';' or end of input")
        return Program(body)

    def stmt(self):
        """Sequence of simple statements, right-associated."""
        start = self.tok.start
        seq_id = self.fresh_id() if self._sequence_follows() else None
        first = self.simple()
        if not self.at(";"):
            return first
        self.expect(";")
        if self._at_stmt_end():
            return first
        rest = self.stmt()
        return Seq(first, rest, seq_id, SourceSpan(start, self.tokens[self.pos - 1].end))

    def _sequence_follows(self) -> bool:
        """Look ahead (bracket-aware) for a ';' that joins two statements.

        Seq nodes take their id before their children so that ids follow
        pre-order, which requires knowing up front whether a Seq is built.
        """
        depth = 0
        i = self.pos
        while True:
            t = self.tokens[i]
            if t.kind == "eof":
                return False
            if t.kind == "sym":
                if t.text == "{":
                    depth += 1
                elif t.text == "}":
                    if depth == 0:
                        return False
                    depth -= 1
                elif t.text == ";" and depth == 0:
                    nxt = self.tokens[i + 1]
                    return not (nxt.kind == "eof" or (nxt.kind == "sym" and nxt.text in "{}"))
            i += 1

    def _at_stmt_end(self) -> bool:
        return self.tok.kind == "eof" or self.at("}") or self.at("{")

    def simple(self):
        tok = self.tok
        start = tok.start
        if tok.kind == "ident":
            nid = self.fresh_id()
            self.pos += 1
            self.expect(":=")
            expr = self.aexpr()
            return Assign(tok.text, expr, nid, self._span(start))
        if self.at("skip"):
            nid = self.fresh_id()
            self.pos += 1
            return Skip(nid, self._span(start))
        if self.at("if"):
            nid = self.fresh_id()
            self.pos += 1
            cond = self.bexpr()
            self.expect("then")
            then = self.block()
            self.expect("else")
            orelse = self.block()
            return If(cond, then, orelse, nid, self._span(start))
        if self.at("while"):
            nid = self.fresh_id()
            self.pos += 1
            cond = self.bexpr()
            self.expect("do")
            body = self.block()
            return While(cond, body, nid, self._span(start))
        if self.at("fork"):
            nid = self.fresh_id()
            self.pos += 1
            self.expect("{")
            threads = []
            while self.at("{"):
                threads.append(self.block())
                if self.at(";"):
                    self.pos += 1
            if not threads:
                self.error("'{' opening a thread")
            self.expect("}")
            return Fork(tuple(threads), nid, self._span(start))
        self.error("a statement")

    def block(self):
        self.expect("{")
        body = self.stmt()
        self.expect("}")
        return body

    def _span(self, start):
        return SourceSpan(start, self.tokens[self.pos - 1].end)

    def literal(self):
        tok = self.tok
        if tok.kind == "ident":
            self.pos += 1
            return Var(tok.text)
        if tok.kind == "int":
            self.pos += 1
            return Const(int(tok.text))
        if self.at("-") and self.tokens[self.pos + 1].kind == "int":
            self.pos += 2
            return Const(-int(self.tokens[self.pos - 1].text))
        self.error("a variable or integer")

    def aexpr(self):
        left = self.literal()
        for op in ("+", "-", "*"):
            if self.at(op):
                self.pos += 1
                return BinOp(op, left, self.literal())
        return left

    def bexpr(self):
        left = self.literal()
        for op in ("=", "<=", "<"):
            if self.at(op):
                self.pos += 1
                return Compare(op, left, self.literal())
        self.error("a comparison operator ('=', '<=', '<')")


def parse(text: str) -> Program:
    """Parse FWHILE source into a :class:`Program` with pre-order node ids.

    Raises :class:`ParseError` on any lexical or syntactic problem.
    """
    return _Parser(text).program()


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())
