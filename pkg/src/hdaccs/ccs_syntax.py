"""CCS process terms: syntax tree, parser and printer.

Concrete syntax::

    P ::= nil | a.P | ~a.P | tau.P | (nu a) P | P + P | P || P | rec x. P | x | (P)

Prefix binds tightest, then restriction, then sum, then parallel
composition; ``rec`` extends as far to the right as possible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .label_objects import TAU, co_name


class CcsSyntaxError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} at position {position}")
        self.position = position


class UnguardedError(CcsSyntaxError):
    pass


@dataclass(frozen=True)
class Nil:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Prefix:
    action: str
    body: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Restrict:
    name: str
    body: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Par:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Rec:
    var: str
    body: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return show(self)


Term = Union[Nil, Prefix, Restrict, Sum, Par, Rec, Var]
CcsTerm = Term

_TOKEN = re.compile(r"\s*(?:(\|\|)|(~?[A-Za-z_][A-Za-z0-9_]*)|([().+]))")
_KEYWORDS = {"nil", "nu", "rec"}


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise CcsSyntaxError(f"unexpected character {text[pos]!r}", pos)
        out.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.end = len(text)

    def peek(self, k: int = 0) -> str | None:
        j = self.i + k
        return self.toks[j][0] if j < len(self.toks) else None

    def pos(self) -> int:
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise CcsSyntaxError("unexpected end of input", self.pos())
        if expected is not None and tok != expected:
            raise CcsSyntaxError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def name(self, what: str) -> str:
        tok = self.peek()
        if tok is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok) or tok in _KEYWORDS or tok == TAU:
            raise CcsSyntaxError(f"expected {what}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def parse(self) -> Term:
        if not self.toks:
            raise CcsSyntaxError("empty term", 0)
        t = self.par()
        if self.peek() is not None:
            raise CcsSyntaxError(f"unexpected {self.peek()!r}", self.pos())
        return t

    def par(self) -> Term:
        t = self.sum()
        while self.peek() == "||":
            self.take()
            t = Par(t, self.sum())
        return t

    def sum(self) -> Term:
        t = self.unary()
        while self.peek() == "+":
            self.take()
            t = Sum(t, self.unary())
        return t

    def unary(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise CcsSyntaxError("unexpected end of input", self.pos())
        if tok == "(" and self.peek(1) == "nu":
            self.take("(")
            self.take("nu")
            a = self.name("a channel name")
            self.take(")")
            return Restrict(a, self.unary())
        if tok == "(":
            self.take("(")
            t = self.par()
            self.take(")")
            return t
        if tok == "rec":
            self.take()
            x = self.name("a variable")
            self.take(".")
            return Rec(x, self.par())
        if tok == "nil":
            self.take()
            return Nil()
        if tok in ("+", "||", ")", "."):
            raise CcsSyntaxError(f"unexpected {tok!r}", self.pos())
        if self.peek(1) == ".":
            here = self.pos()
            act = self.take()
            if act in _KEYWORDS or act == "~" + TAU or act[1:] in _KEYWORDS:
                raise CcsSyntaxError(f"{act!r} cannot be an action", here)
            self.take(".")
            return Prefix(act, self.unary())
        here = self.pos()
        if tok.startswith("~") or tok == TAU:
            raise CcsSyntaxError(f"action {tok!r} must be followed by '.'", here)
        return Var(self.name("a variable"))


def check_guarded(t: Term) -> None:
    """Every variable must be bound and occur under a prefix inside its rec."""

    def walk(t: Term, bound: dict[str, bool]) -> None:
        if isinstance(t, Var):
            if t.name not in bound:
                raise UnguardedError(f"free variable {t.name!r}")
            if not bound[t.name]:
                raise UnguardedError(f"variable {t.name!r} is not guarded")
        elif isinstance(t, Prefix):
            walk(t.body, {k: True for k in bound})
        elif isinstance(t, Rec):
            walk(t.body, {**bound, t.var: False})
        elif isinstance(t, (Sum, Par)):
            walk(t.left, bound)
            walk(t.right, bound)
        elif isinstance(t, Restrict):
            walk(t.body, bound)

    walk(t, {})


def parse_ccs(text: str) -> Term:
    t = _Parser(text).parse()
    check_guarded(t)
    return t


# ---------------------------------------------------------------- printing
# The helpers work on printed strings so that product and restricted states
# can be decorated without rebuilding terms.


def _top_level(text: str, op: str) -> bool:
    depth = 0
    i = 0
    while i < len(text):
        c = text[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif depth == 0 and text.startswith(op, i):
            return True
        i += 1
    return False


def _level(text: str) -> int:
    # 0: rec, 1: parallel, 2: sum, 3: prefix-level and atoms
    if text.startswith("rec "):
        return 0
    if _top_level(text, "||"):
        return 1
    if _top_level(text, "+"):
        return 2
    return 3


def _at_least(text: str, level: int) -> str:
    return text if _level(text) >= level else f"({text})"


def prefix_text(action: str, body: str) -> str:
    return f"{action}.{_at_least(body, 3)}"


def restrict_text(name: str, body: str) -> str:
    return f"(nu {name}){_at_least(body, 3)}"


def sum_text(left: str, right: str) -> str:
    return f"{_at_least(left, 2)} + {_at_least(right, 3)}"


def par_text(left: str, right: str) -> str:
    return f"{_at_least(left, 1)} || {_at_least(right, 2)}"


def rec_text(var: str, body: str) -> str:
    return f"rec {var}. {body}"


def show(t: Term) -> str:
    if isinstance(t, Nil):
        return "nil"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Prefix):
        return prefix_text(t.action, show(t.body))
    if isinstance(t, Restrict):
        return restrict_text(t.name, show(t.body))
    if isinstance(t, Sum):
        return sum_text(show(t.left), show(t.right))
    if isinstance(t, Par):
        return par_text(show(t.left), show(t.right))
    if isinstance(t, Rec):
        return rec_text(t.var, show(t.body))
    raise TypeError(f"not a CCS term: {t!r}")


def substitute(t: Term, var: str, value: Term) -> Term:
    """Replace free occurrences of ``var``; ``value`` is closed so no capture."""
    if isinstance(t, Var):
        return value if t.name == var else t
    if isinstance(t, Nil):
        return t
    if isinstance(t, Prefix):
        return Prefix(t.action, substitute(t.body, var, value))
    if isinstance(t, Restrict):
        return Restrict(t.name, substitute(t.body, var, value))
    if isinstance(t, Sum):
        return Sum(substitute(t.left, var, value), substitute(t.right, var, value))
    if isinstance(t, Par):
        return Par(substitute(t.left, var, value), substitute(t.right, var, value))
    if isinstance(t, Rec):
        return t if t.var == var else Rec(t.var, substitute(t.body, var, value))
    raise TypeError(f"not a CCS term: {t!r}")


def action_names(t: Term) -> set[str]:
    """Channel names occurring in prefixes or restrictions (without ``~``)."""
    if isinstance(t, Prefix):
        base = set() if t.action == TAU else {t.action.lstrip("~")}
        return base | action_names(t.body)
    if isinstance(t, Restrict):
        return {t.name} | action_names(t.body)
    if isinstance(t, (Sum, Par)):
        return action_names(t.left) | action_names(t.right)
    if isinstance(t, Rec):
        return action_names(t.body)
    return set()


__all__ = [
    "CcsSyntaxError",
    "UnguardedError",
    "Nil",
    "Prefix",
    "Restrict",
    "Sum",
    "Par",
    "Rec",
    "Var",
    "Term",
    "CcsTerm",
    "parse_ccs",
    "check_guarded",
    "show",
    "substitute",
    "action_names",
    "co_name",
]
