"""Text formats.

Theories (``.cnft``)::

    # comment
    g | j <- .          # disjunctive fact, same as "g | j."
    d <- a, b.
    <- b, d.            # constraint

Programs use the same grammar with ``not x`` allowed in bodies.  Results are
serialized as compact JSON with a fixed key order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from minmod.core import (PHI, AtomTable, Clause, MinmodError,
                         ReservedAtomPresent, Theory)
from minmod.transforms import LogicProgram, Rule

RESULT_STATUSES = ("minimal", "model", "failure", "inconsistent", "unknown")

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\f\v]+)
  | (?P<nl>\r\n|\r|\n)
  | (?P<comment>\#[^\r\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow><-)
  | (?P<punct>[|,.])
""", re.VERBOSE)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(MinmodError, ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "<-", "|", ",", ".", "eof"
    text: str
    span: SourceSpan


def _tokenize(text: str) -> Iterator[_Token]:
    line, line_start, pos = 1, 0, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            yield _Token("ident", m.group(), span)
        elif kind == "arrow":
            yield _Token("<-", "<-", span)
        elif kind == "punct":
            yield _Token(m.group(), m.group(), span)
        pos = m.end()
    yield _Token("eof", "", SourceSpan(line, pos - line_start + 1))


class _Parser:
    def __init__(self, text: str, table: AtomTable, allow_negation: bool,
                 allow_reserved: bool):
        self.tokens = _tokenize(text)
        self.tok = next(self.tokens)
        self.table = table
        self.allow_negation = allow_negation
        self.allow_reserved = allow_reserved

    def advance(self) -> _Token:
        tok = self.tok
        self.tok = next(self.tokens)
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        if self.tok.kind != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message: str):
        found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
        raise ParseError(f"{message}, found {found}", self.tok.span)

    def atom(self) -> int:
        tok = self.expect("ident", "atom")
        if tok.text == PHI and not self.allow_reserved:
            raise ReservedAtomPresent(f"{tok.span}: atom {PHI!r} is reserved")
        return self.table.intern(tok.text)

    def statements(self) -> Iterator[tuple[list[int], list[int], list[int]]]:
        while self.tok.kind != "eof":
            yield self.statement()

    def statement(self):
        head: list[int] = []
        pos: list[int] = []
        neg: list[int] = []
        if self.tok.kind == "ident":
            if self.allow_negation and self.tok.text == "not":
                raise ParseError("'not' is not allowed in a head", self.tok.span)
            head.append(self.atom())
            while self.tok.kind == "|":
                self.advance()
                head.append(self.atom())
        elif self.tok.kind != "<-":
            self.fail("expected atom or '<-'")
        if self.tok.kind == "<-":
            self.advance()
            if self.tok.kind != ".":
                self.literal(pos, neg)
                while self.tok.kind == ",":
                    self.advance()
                    self.literal(pos, neg)
        if self.tok.kind != ".":
            if self.tok.kind == "ident" and pos and not self.allow_negation \
                    and self.table.name(pos[-1]) == "not":
                raise ParseError("negation is only allowed in programs",
                                 self.tok.span)
            self.fail("expected ',' or '.'" if pos or neg else "expected '<-' or '.'")
        self.advance()
        return head, pos, neg

    def literal(self, pos: list[int], neg: list[int]):
        if self.allow_negation and self.tok.kind == "ident" and self.tok.text == "not":
            self.advance()
            neg.append(self.atom())
        else:
            pos.append(self.atom())


def parse_theory(text: str, table: AtomTable | None = None, *,
                 allow_reserved: bool = False) -> Theory:
    table = AtomTable() if table is None else table
    parser = _Parser(text, table, allow_negation=False,
                     allow_reserved=allow_reserved)
    clauses = [Clause(frozenset(h), frozenset(b)) for h, b, _ in parser.statements()]
    return Theory(tuple(clauses), table)


def parse_program(text: str, table: AtomTable | None = None) -> LogicProgram:
    table = AtomTable() if table is None else table
    parser = _Parser(text, table, allow_negation=True, allow_reserved=False)
    rules = [Rule(frozenset(h), frozenset(p), frozenset(n))
             for h, p, n in parser.statements()]
    return LogicProgram(tuple(rules), table)


def parse_model(text: str, table: AtomTable) -> frozenset:
    """Atoms listed in ``text``: names separated by whitespace or commas.

    Braces, a trailing period and ``#`` comments are tolerated, so both
    ``a d`` and ``{a, d}.`` work.  Unknown names are interned.
    """
    atoms = []
    for lineno, raw in enumerate(re.split(r"\r\n|\r|\n", text), start=1):
        line = raw.split("#", 1)[0]
        for m in re.finditer(r"[^\s,{}.]+", line):
            name = m.group()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ParseError(f"invalid atom name {name!r}",
                                 SourceSpan(lineno, m.start() + 1))
            atoms.append(table.intern(name))
    return frozenset(atoms)


def _sorted_names(atoms: Iterable[int], table: AtomTable) -> list[str]:
    return [table.name(a) for a in sorted(atoms)]


def format_clause(clause: Clause, table: AtomTable) -> str:
    head = " | ".join(_sorted_names(clause.head, table))
    body = ", ".join(_sorted_names(clause.body, table))
    if clause.body:
        return f"{head} <- {body}." if head else f"<- {body}."
    return f"{head}." if head else "<-."


def format_rule(rule: Rule, table: AtomTable) -> str:
    head = " | ".join(_sorted_names(rule.head, table))
    body = _sorted_names(rule.pos, table) + \
        ["not " + n for n in _sorted_names(rule.neg, table)]
    if body:
        return f"{head} <- {', '.join(body)}." if head else f"<- {', '.join(body)}."
    return f"{head}." if head else "<-."


def serialize_theory(theory: Theory) -> str:
    return "".join(format_clause(c, theory.table) + "\n" for c in theory.clauses)


def serialize_program(program: LogicProgram) -> str:
    return "".join(format_rule(r, program.table) + "\n" for r in program.rules)


def structure(theory: Theory) -> tuple:
    """Name-level clause list, for comparing theories across atom tables."""
    name = theory.table.name
    return tuple((frozenset(map(name, c.head)), frozenset(map(name, c.body)))
                 for c in theory.clauses)


def serialize_result(status: str, model: Iterable[str], iterations: int,
                     operator: str, **extra) -> str:
    if status not in RESULT_STATUSES:
        raise ValueError(f"unknown status {status!r}")
    obj = {"status": status, "model": sorted(model),
           "iterations": int(iterations), "operator": operator}
    obj.update(extra)
    return json.dumps(obj, separators=(",", ":"))
