"""Text parser for rules, programs, DLPs, rule bases, nested programs and formulas.

Rules use ``head :- body.`` with ``;`` between head literals, ``,`` between
body literals and ``~`` or ``not`` for default negation.  ``%`` starts a
comment and a line holding only ``%%`` separates the programs of a DLP.
Rule bases wrap program units in ``{ ... }``.  Nested rules and formulas use
``&``, ``|``, ``true``, ``false`` and parentheses; formulas negate with ``!``
or ``-`` and also allow ``->`` and ``<->``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    BOT, DLP, TOP, Expr, Iff, Implies, KnowledgeBase, Literal, NestedProgram,
    NestedRule, Not, Program, Rule, RuleBase, Var, check_atom, conj, disj,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
    | (?P<op><->|->|:-|[.,;&|!~()\-{}])
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

SEPARATOR = "%%"


def _strip_comment(line: str) -> str:
    i = line.find("%")
    return line if i < 0 else line[:i]


def tokenize(text: str, allow_separators: bool = False) -> list[Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() == SEPARATOR:
            if not allow_separators:
                raise ParseError("'%%' separators are only allowed in DLP input", lineno, 1)
            tokens.append(Token("sep", SEPARATOR, lineno, 1))
            continue
        line = _strip_comment(raw)
        i = 0
        while i < len(line):
            m = _TOKEN_RE.match(line, i)
            if not m:
                raise ParseError(f"unexpected character {line[i]!r}", lineno, i + 1)
            if m.lastgroup != "ws":
                kind = m.lastgroup
                word = m.group()
                if kind == "name" and word in ("not", "true", "false"):
                    kind = word
                tokens.append(Token(kind, word, lineno, i + 1))
            i = m.end()
        tokens.append(Token("eol", "", lineno, len(line) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], permissive: bool, skip_eol: bool = True):
        self.tokens = [t for t in tokens if t.kind != "eol"] if skip_eol else tokens
        self.i = 0
        self.permissive = permissive

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def at(self, *texts: str) -> bool:
        t = self.peek()
        return t is not None and (t.text in texts or t.kind in texts)

    def take(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else Token("eof", "", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.column + len(last.text))
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t is None or (t.text != text and t.kind != text):
            self.fail(f"expected {text!r}")
        return self.take()

    def fail(self, message: str):
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else Token("eof", "", 1, 1)
            raise ParseError(message + " at end of input", last.line, last.column + len(last.text))
        raise ParseError(f"{message}, found {t.text or t.kind!r}", t.line, t.column)

    def atom(self) -> str:
        t = self.peek()
        if t is None or t.kind != "name":
            self.fail("expected an atom")
        self.take()
        try:
            return check_atom(t.text, self.permissive)
        except ValueError as e:
            raise ParseError(str(e), t.line, t.column) from None

    # plain rules

    def literal(self) -> Literal:
        if self.at("not", "~"):
            self.take()
            return Literal(self.atom(), True)
        return Literal(self.atom(), False)

    def literals(self, sep: str) -> list[Literal]:
        out = [self.literal()]
        while self.at(sep):
            self.take()
            out.append(self.literal())
        return out

    def rule(self) -> Rule:
        head: list[Literal] = []
        body: list[Literal] = []
        if not self.at(":-", "."):
            head = self.literals(";")
        if self.at(":-"):
            self.take()
            if not self.at("."):
                body = self.literals(",")
        self.expect(".")
        return Rule(head, body)

    def rules_until(self, *stops: str) -> list[Rule]:
        out = []
        while self.peek() is not None and not self.at(*stops):
            out.append(self.rule())
        return out

    # expressions

    def expr(self, formula: bool) -> Expr:
        left = self.implication(formula)
        if formula and self.at("<->"):
            self.take()
            return Iff(left, self.expr(formula))
        return left

    def implication(self, formula: bool) -> Expr:
        left = self.disjunction(formula)
        if formula and self.at("->"):
            self.take()
            return Implies(left, self.implication(formula))
        return left

    def disjunction(self, formula: bool) -> Expr:
        args = [self.conjunction(formula)]
        while self.at("|"):
            self.take()
            args.append(self.conjunction(formula))
        return disj(*args) if len(args) > 1 else args[0]

    def conjunction(self, formula: bool) -> Expr:
        args = [self.unary(formula)]
        while self.at("&"):
            self.take()
            args.append(self.unary(formula))
        return conj(*args) if len(args) > 1 else args[0]

    def unary(self, formula: bool) -> Expr:
        negations = ("!", "-", "~", "not") if formula else ("~", "not")
        if self.at(*negations):
            self.take()
            return Not(self.unary(formula))
        if self.at("("):
            self.take()
            e = self.expr(formula)
            self.expect(")")
            return e
        if self.at("true"):
            self.take()
            return TOP
        if self.at("false"):
            self.take()
            return BOT
        return Var(self.atom())

    def nested_rule(self) -> NestedRule:
        head = BOT
        body = TOP
        if not self.at(":-", "."):
            head = self.expr(False)
        if self.at(":-"):
            self.take()
            body = self.expr(False)
        self.expect(".")
        return NestedRule(head, body)


def _finish(p: _Parser):
    if p.peek() is not None:
        p.fail("unexpected trailing input")


def parse_rule(text: str, permissive: bool = False) -> Rule:
    p = _Parser(tokenize(text), permissive)
    r = p.rule()
    _finish(p)
    return r


def parse_program(text: str, permissive: bool = False) -> Program:
    p = _Parser(tokenize(text), permissive)
    rules = p.rules_until()
    return Program(rules)


def parse_dlp(text: str, permissive: bool = False) -> DLP:
    p = _Parser(tokenize(text, allow_separators=True), permissive)
    programs = [p.rules_until("sep")]
    while p.at("sep"):
        p.take()
        programs.append(p.rules_until("sep"))
    try:
        return DLP(Program(rs) for rs in programs)
    except ValueError as e:
        raise ParseError(str(e), 1, 1) from None


def parse_rulebase(text: str, permissive: bool = False) -> RuleBase:
    p = _Parser(tokenize(text), permissive)
    units = []
    while p.peek() is not None:
        if p.at("{"):
            p.take()
            units.append(Program(p.rules_until("}")))
            p.expect("}")
        else:
            units.append(p.rule())
    return RuleBase(units)


def parse_nested(text: str, permissive: bool = False) -> NestedProgram:
    p = _Parser(tokenize(text), permissive)
    rules = []
    while p.peek() is not None:
        rules.append(p.nested_rule())
    return NestedProgram(rules)


def parse_formula(text: str, permissive: bool = False) -> Expr:
    p = _Parser(tokenize(text), permissive)
    f = p.expr(True)
    _finish(p)
    return f


def parse_kb(text: str, permissive: bool = False) -> KnowledgeBase:
    """One formula per non-blank line."""
    formulas = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() == SEPARATOR:
            raise ParseError("'%%' separators are only allowed in DLP input", lineno, 1)
        line = _strip_comment(raw)
        if not line.strip():
            continue
        tokens = [Token(t.kind, t.text, lineno, t.column)
                  for t in tokenize(line) if t.kind != "eol"]
        p = _Parser(tokens, permissive)
        formulas.append(p.expr(True))
        _finish(p)
    return KnowledgeBase(formulas)


_PARSERS = {
    "rule": parse_rule,
    "program": parse_program,
    "dlp": parse_dlp,
    "rulebase": parse_rulebase,
    "nested": parse_nested,
    "formula": parse_formula,
    "kb": parse_kb,
}


def parse(kind: str, text: str, permissive: bool = False):
    """Parses `text` as the given kind of value."""
    try:
        fn = _PARSERS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(_PARSERS)}") from None
    return fn(text, permissive)
