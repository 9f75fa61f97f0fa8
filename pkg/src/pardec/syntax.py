"""Process expressions: abstract syntax, parser and printer.

Surface grammar (EBNF), lowest precedence first::

    expr    ::= merge ( "+" merge )*
    merge   ::= unary ( "||" unary )*
    unary   ::= "0"
              | "(" expr ")"
              | action "." unary
              | action "*" unary
              | action                  (shorthand for action "." "0")
    action  ::= "tau" | [a-z][a-zA-Z0-9_]*

``+`` and ``||`` associate to the left.  ``tau`` is the silent action and
is reserved; it can never name a visible action.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

TAU = "tau"

_ACTION_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


def is_silent(action: str) -> bool:
    return action == TAU


def visible(name: str) -> str:
    """Validate and return a visible action name."""
    if name == TAU:
        raise ValueError("'tau' is reserved for the silent action")
    if not _ACTION_RE.match(name):
        raise ValueError(f"invalid action name {name!r}")
    return name


@dataclass(frozen=True)
class Nil:
    def __str__(self):
        return format_expr(self)


@dataclass(frozen=True)
class Prefix:
    action: str
    body: "ProcessExpr"

    def __str__(self):
        return format_expr(self)


@dataclass(frozen=True)
class Choice:
    left: "ProcessExpr"
    right: "ProcessExpr"

    def __str__(self):
        return format_expr(self)


@dataclass(frozen=True)
class Merge:
    left: "ProcessExpr"
    right: "ProcessExpr"

    def __str__(self):
        return format_expr(self)


@dataclass(frozen=True)
class Iter:
    """Prefix iteration ``a*P``: loops on ``a`` or behaves as ``P``."""
    action: str
    body: "ProcessExpr"

    def __str__(self):
        return format_expr(self)


ProcessExpr = Union[Nil, Prefix, Choice, Merge, Iter]

NIL = Nil()


def merge_all(parts) -> ProcessExpr:
    """Left-nested parallel composition of ``parts``; ``0`` when empty."""
    parts = list(parts)
    if not parts:
        return NIL
    result = parts[0]
    for p in parts[1:]:
        result = Merge(result, p)
    return result


def drop_nil_components(e: ProcessExpr) -> ProcessExpr:
    """Remove ``0`` operands from the top-level parallel structure of ``e``.

    ``P || 0`` and ``P`` are strongly bisimilar, so the result is equivalent
    to ``e`` under every semantics.
    """
    if not isinstance(e, Merge):
        return e
    left = drop_nil_components(e.left)
    right = drop_nil_components(e.right)
    if isinstance(left, Nil):
        return right
    if isinstance(right, Nil):
        return left
    return Merge(left, right)


def size(e: ProcessExpr) -> int:
    if isinstance(e, Nil):
        return 1
    if isinstance(e, (Prefix, Iter)):
        return 1 + size(e.body)
    return 1 + size(e.left) + size(e.right)


# --------------------------------------------------------------------------
# printing

_CHOICE, _MERGE, _UNARY = 0, 1, 2


def _level(e):
    if isinstance(e, Choice):
        return _CHOICE
    if isinstance(e, Merge):
        return _MERGE
    return _UNARY


def _fmt(e, min_level):
    if isinstance(e, Nil):
        text = "0"
    elif isinstance(e, Prefix):
        text = f"{e.action}.{_fmt(e.body, _UNARY)}"
    elif isinstance(e, Iter):
        text = f"{e.action}*{_fmt(e.body, _UNARY)}"
    elif isinstance(e, Choice):
        text = f"{_fmt(e.left, _CHOICE)} + {_fmt(e.right, _MERGE)}"
    elif isinstance(e, Merge):
        text = f"{_fmt(e.left, _MERGE)} || {_fmt(e.right, _UNARY)}"
    else:
        raise TypeError(f"not a process expression: {e!r}")
    if _level(e) < min_level:
        return f"({text})"
    return text


def format_expr(e: ProcessExpr) -> str:
    """Render ``e`` with the fewest parentheses that still parse back to ``e``."""
    return _fmt(e, _CHOICE)


# --------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    """Malformed expression text.  Carries a 1-based line/column."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        where = f"line {line}, column {column}"
        if self.expected:
            message = f"{message}; expected one of {', '.join(self.expected)}"
        super().__init__(f"{where}: {message}")


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<merge>\|\|)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<zero>0)|(?P<punct>[.*+()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident', '0', '.', '*', '+', '||', '(', ')', 'end'
    text: str
    line: int
    column: int


def _tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        elif kind == "ident":
            tokens.append(_Token("ident", value, line, col))
        elif kind == "zero":
            tokens.append(_Token("0", value, line, col))
        elif kind == "merge":
            tokens.append(_Token("||", value, line, col))
        else:
            tokens.append(_Token(value, value, line, col))
        pos = m.end()
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


_UNARY_START = {"0", "(", "action"}


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, tok, expected):
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.line, tok.column, expected)

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(tok, {"+", "||", "end of input"})
        return e

    def expr(self):
        e = self.merge()
        while self.peek().kind == "+":
            self.advance()
            e = Choice(e, self.merge())
        return e

    def merge(self):
        e = self.unary()
        while self.peek().kind == "||":
            self.advance()
            e = Merge(e, self.unary())
        return e

    def unary(self):
        tok = self.advance()
        if tok.kind == "0":
            return NIL
        if tok.kind == "(":
            e = self.expr()
            close = self.advance()
            if close.kind != ")":
                self.fail(close, {")", "+", "||"})
            return e
        if tok.kind == "ident":
            action = self.action(tok)
            nxt = self.peek()
            if nxt.kind == ".":
                self.advance()
                return Prefix(action, self.unary())
            if nxt.kind == "*":
                self.advance()
                return Iter(action, self.unary())
            return Prefix(action, NIL)
        self.fail(tok, _UNARY_START)

    def action(self, tok):
        if tok.text == TAU:
            return TAU
        if not _ACTION_RE.match(tok.text):
            raise ParseError(
                f"invalid action name {tok.text!r} (must start with a lowercase letter)",
                tok.line, tok.column)
        return tok.text


def parse_expr(text: str) -> ProcessExpr:
    """Parse a process expression.  Raises :class:`ParseError` on bad input."""
    parser = _Parser(text)
    try:
        return parser.parse()
    except RecursionError:
        tok = parser.tokens[min(parser.pos, len(parser.tokens) - 1)]
        raise ParseError("expression nested too deeply", tok.line, tok.column) from None
