"""Propositional formulas: AST, parser and printer.

Grammar (ASCII, loosest to tightest):

    formula  := or_expr ("->" formula)?          right-associative
    or_expr  := and_expr ("|" and_expr)*
    and_expr := neg_expr ("&" neg_expr)*
    neg_expr := "~" neg_expr | atom
    atom     := ident | "bot" | "(" formula ")"
    ident    := [a-z][a-zA-Z0-9_]*

``~f`` is sugar for ``f -> bot``; the printer reintroduces it, so
parse(print(ast)) is the identity on ASTs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


class Formula:
    """Base class for AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


BOT = Bot()


def neg(f: Formula) -> Formula:
    return Imp(f, BOT)


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, Bot):
        return frozenset()
    return free_vars(f.left) | free_vars(f.right)


def subformulas(f: Formula) -> list[Formula]:
    """Distinct subformulas in child-first order."""
    seen: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        if g in seen:
            return
        if isinstance(g, (And, Or, Imp)):
            walk(g.left)
            walk(g.right)
        seen[g] = None

    walk(f)
    return list(seen)


class ParseError(InputError):
    """Syntax error carrying the byte offset and the expected token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...]):
        super().__init__(f"{message} at offset {offset} (expected {', '.join(expected)})")
        self.offset = offset
        self.expected = expected


_PUNCT = {"~": "~", "&": "&", "|": "|", "(": "(", ")": ")"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, i))
            i += 1
            continue
        if ch == "-":
            if text.startswith("->", i):
                tokens.append(("->", "->", i))
                i += 2
                continue
            raise ParseError("stray '-'", i, ("->",))
        if "a" <= ch <= "z":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(("bot" if word == "bot" else "ident", word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i, ("ident", "bot", "~", "("))
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[0]}", tok[2], (kind,))
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        left = self.or_expr()
        if self.peek()[0] == "->":
            self.take("->")
            return Imp(left, self.formula())
        return left

    def or_expr(self) -> Formula:
        out = self.and_expr()
        while self.peek()[0] == "|":
            self.take("|")
            out = Or(out, self.and_expr())
        return out

    def and_expr(self) -> Formula:
        out = self.neg_expr()
        while self.peek()[0] == "&":
            self.take("&")
            out = And(out, self.neg_expr())
        return out

    def neg_expr(self) -> Formula:
        kind, _, _ = self.peek()
        if kind == "~":
            self.take("~")
            return neg(self.neg_expr())
        return self.atom()

    def atom(self) -> Formula:
        kind, text, offset = self.peek()
        if kind == "ident":
            self.take("ident")
            return Var(text)
        if kind == "bot":
            self.take("bot")
            return BOT
        if kind == "(":
            self.take("(")
            inner = self.formula()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {kind}", offset, ("ident", "bot", "~", "("))


def parse(text: str) -> Formula:
    parser = _Parser(text)
    out = parser.formula()
    kind, _, offset = parser.peek()
    if kind != "eof":
        raise ParseError(f"trailing {kind}", offset, ("eof",))
    return out


_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_ATOM = 1, 2, 3, 4


def _render(f: Formula, minimum: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Imp) and f.right == BOT:
        return "~" + _render(f.left, _PREC_ATOM)
    if isinstance(f, Imp):
        text = f"{_render(f.left, _PREC_OR)} -> {_render(f.right, _PREC_IMP)}"
        level = _PREC_IMP
    elif isinstance(f, Or):
        text = f"{_render(f.left, _PREC_OR)} | {_render(f.right, _PREC_AND)}"
        level = _PREC_OR
    else:
        text = f"{_render(f.left, _PREC_AND)} & {_render(f.right, _PREC_ATOM)}"
        level = _PREC_AND
    return f"({text})" if level < minimum else text


def pretty(f: Formula) -> str:
    """Minimal-parenthesis rendering; inverse of parse on ASTs."""
    return _render(f, _PREC_IMP)
