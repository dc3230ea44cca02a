"""Condensing a dynamic logic program into a single program.

Each update step guards the rules of the current program so that they switch
off whenever a newer rule for the complementary literal fires.  The guard is
either a negated activation formula (nested target) or is spelled out with
blocking sets (disjunctive target).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .semantics import (
    atom_tables, check_cap, full_table, resolve_alphabet, stable_models, subset_tables,
    DEFAULT_CAP,
)
from .syntax import (
    BOT, BOT_ATOM, DLP, TOP, Alphabet, And, Bot, Expr, Literal, NestedProgram, NestedRule,
    Not, Or, Program, Rule, Top, Var, conj, disj, encode_constraints, expr_literal,
    literal_expr, neg, pos,
)

SEMANTICS = ("JU", "AS")
TARGETS = ("nested", "disjunctive")


def _check_semantics(variant: str) -> str:
    variant = variant.upper()
    if variant not in SEMANTICS:
        raise ValueError(f"unknown semantics {variant!r}; expected one of {SEMANTICS}")
    return variant


# -- nested programs -----------------------------------------------------------

def to_nested(program: Program | Iterable[Rule]) -> NestedProgram:
    """Translates each rule to (disjunction of head :- conjunction of body)."""
    return NestedProgram(
        NestedRule(disj(*map(literal_expr, r.head)), conj(*map(literal_expr, r.body)))
        for r in program
    )


def _holds(e: Expr, interp: frozenset) -> bool:
    if isinstance(e, Top):
        return True
    if isinstance(e, Bot):
        return False
    if isinstance(e, Var):
        return e.name in interp
    if isinstance(e, Not):
        return not _holds(e.arg, interp)
    if isinstance(e, And):
        return all(_holds(a, interp) for a in e.args)
    if isinstance(e, Or):
        return any(_holds(a, interp) for a in e.args)
    raise TypeError(f"not a nested expression: {e!r}")


def _reduct_expr(e: Expr, interp: frozenset) -> Expr:
    if isinstance(e, Not):
        return BOT if _holds(e.arg, interp) else TOP
    if isinstance(e, And):
        return And(tuple(_reduct_expr(a, interp) for a in e.args))
    if isinstance(e, Or):
        return Or(tuple(_reduct_expr(a, interp) for a in e.args))
    return e


def nested_reduct(target, interp: Iterable[str]):
    """Replaces every maximal negated subformula by true or false according to `interp`."""
    interp = frozenset(interp)
    if isinstance(target, NestedRule):
        return NestedRule(_reduct_expr(target.head, interp), _reduct_expr(target.body, interp))
    if isinstance(target, NestedProgram):
        return NestedProgram(nested_reduct(r, interp) for r in target)
    return _reduct_expr(target, interp)


@lru_cache(maxsize=200_000)
def _table(e: Expr, alphabet: Alphabet) -> int:
    """Classical truth table of an expression; negation is complement."""
    n = alphabet.size
    if isinstance(e, Top):
        return full_table(n)
    if isinstance(e, Bot):
        return 0
    if isinstance(e, Var):
        return atom_tables(n)[alphabet.atoms.index(e.name)]
    if isinstance(e, Not):
        return full_table(n) & ~_table(e.arg, alphabet)
    if isinstance(e, And):
        t = full_table(n)
        for a in e.args:
            t &= _table(a, alphabet)
        return t
    if isinstance(e, Or):
        t = 0
        for a in e.args:
            t |= _table(a, alphabet)
        return t
    raise TypeError(f"not a nested expression: {e!r}")


def _reduct_table(e: Expr, j: int, alphabet: Alphabet) -> int:
    n = alphabet.size
    if isinstance(e, Not):
        return 0 if _table(e.arg, alphabet) >> j & 1 else full_table(n)
    if isinstance(e, And):
        t = full_table(n)
        for a in e.args:
            t &= _reduct_table(a, j, alphabet)
        return t
    if isinstance(e, Or):
        t = 0
        for a in e.args:
            t |= _reduct_table(a, j, alphabet)
        return t
    return _table(e, alphabet)


def nested_stable_masks(program: NestedProgram, alphabet: Alphabet) -> list[int]:
    n = alphabet.size
    full = full_table(n)
    subs = subset_tables(n)
    out = []
    for j in range(1 << n):
        t = full
        for r in program:
            body = _reduct_table(r.body, j, alphabet)
            t &= (full & ~body) | _reduct_table(r.head, j, alphabet)
            if not t >> j & 1:
                break
        if t >> j & 1 and t & subs[j] == 1 << j:
            out.append(j)
    return out


def nested_stable_models(program: NestedProgram, alphabet=None,
                         cap: int | None = None) -> set[frozenset[str]]:
    """Interpretations that are minimal models of the program's reduct w.r.t. themselves."""
    alphabet = resolve_alphabet(program, alphabet=alphabet)
    check_cap(alphabet, cap, DEFAULT_CAP)
    return {alphabet.interpretation(j) - {BOT_ATOM}
            for j in nested_stable_masks(program, alphabet)}


# -- nested condensing ---------------------------------------------------------

def _head_literal(rule: NestedRule) -> Literal | None:
    return expr_literal(rule.head)


def _choice_atom(rule: NestedRule) -> str | None:
    """The atom p if the head is p | ~p (in either order)."""
    h = rule.head
    if not isinstance(h, Or) or len(h.args) != 2:
        return None
    a, b = (expr_literal(x) for x in h.args)
    if a is None or b is None or a.complement() != b:
        return None
    return a.atom


def activation_formula(update: NestedProgram, literal: Literal) -> Expr:
    """Disjunction of the bodies of the rules whose head is exactly `literal`."""
    target = literal_expr(literal)
    return disj(*(r.body for r in update if r.head == target))


def _check_class(variant: str, program: NestedProgram, role: str):
    for r in program:
        if _head_literal(r) is not None:
            continue
        if variant == "AS" and _choice_atom(r) is not None:
            continue
        kind = "a single literal or L | ~L" if variant == "AS" else "a single literal"
        raise ValueError(f"{role} rule {r} needs {kind} in its head")


def _guarded(rule: NestedRule, lit: Literal, update: NestedProgram) -> NestedRule:
    guard = Not(activation_formula(update, lit.complement()))
    return NestedRule(rule.head, conj(rule.body, guard))


def condense(variant: str, program: NestedProgram, update: NestedProgram) -> NestedProgram:
    """One JU or AS condensing step: `program` updated by `update`."""
    variant = _check_semantics(variant)
    _check_class(variant, program, "program")
    _check_class("JU", update, "update")
    out = []
    for r in program:
        lit = _head_literal(r)
        if lit is not None:
            out.append(_guarded(r, lit, update))
        else:
            out.append(r)
    if variant == "AS":
        for r in update:
            lit = _head_literal(r)
            if not lit.negated:
                out.append(NestedRule(disj(r.head, Not(r.head)), r.body))
    out.extend(update)
    return NestedProgram(out)


# -- disjunctive condensing ----------------------------------------------------

def _bodies(update: Program | Iterable[Rule], literal: Literal) -> list[tuple[Literal, ...]]:
    return [r.body for r in update if r.head == (literal,)]


def blocking_sets(update: Program | Iterable[Rule], literal: Literal) -> list[frozenset[Literal]]:
    """All ways to pick one complemented literal from each body deriving `literal`.

    An empty body cannot be blocked, so then there are none; with no rules
    for `literal` the only blocking set is empty.
    """
    bodies = _bodies(update, literal)
    if any(not b for b in bodies):
        return []
    out: list[frozenset[Literal]] = []
    for pick in itertools.product(*bodies):
        s = frozenset(l.complement() for l in pick)
        if s not in out:
            out.append(s)
    return out


def original_head(rule: Rule) -> Literal | None:
    """The single atom of the head, or the head itself if it is one default literal."""
    atoms = [l for l in rule.head if not l.negated]
    if len(atoms) == 1:
        return atoms[0]
    if not atoms and len(rule.head) == 1:
        return rule.head[0]
    return None


def _is_choice(rule: Rule) -> bool:
    return len(rule.head) == 2 and rule.head[0].complement() == rule.head[1]


def _split(block: frozenset[Literal]) -> tuple[list[str], list[str]]:
    ordered = sorted(block)
    return [l.atom for l in ordered if not l.negated], [l.atom for l in ordered if l.negated]


def condense_disjunctive(variant: str, program: Program | Iterable[Rule],
                         update: Program | Iterable[Rule]) -> Program:
    """One JU or AS condensing step producing a disjunctive program."""
    variant = _check_semantics(variant)
    program, update = list(program), list(update)
    for r in update:
        if len(r.head) != 1:
            raise ValueError(f"update rule {r} needs a single literal in its head")
    out: list[Rule] = []
    for r in program:
        if variant == "AS" and _is_choice(r):
            out.append(r)
            continue
        lit = original_head(r) if variant == "JU" else (r.head[0] if len(r.head) == 1 else None)
        if lit is None:
            raise ValueError(f"rule {r} has no original head")
        for block in blocking_sets(update, lit.complement()):
            # atoms of the block either move to the head or stay in the body
            plus, minus = _split(block)
            if variant == "JU" and not lit.negated:
                head = list(r.head) + [neg(a) for a in plus]
                body = list(r.body) + [neg(a) for a in minus]
            else:
                head = list(r.head)
                body = list(r.body) + [pos(a) for a in plus] + [neg(a) for a in minus]
            out.append(Rule(head, body))
    if variant == "AS":
        for r in update:
            lit = r.head[0]
            if not lit.negated:
                out.append(Rule([lit, lit.complement()], r.body))
    out.extend(update)
    return Program(out)


# -- simplification ------------------------------------------------------------

def _fold(e: Expr) -> Expr:
    if isinstance(e, Not):
        arg = _fold(e.arg)
        if isinstance(arg, Top):
            return BOT
        if isinstance(arg, Bot):
            return TOP
        return Not(arg)
    if isinstance(e, And):
        args = [_fold(a) for a in e.args]
        if any(isinstance(a, Bot) for a in args):
            return BOT
        return conj(*(a for a in args if not isinstance(a, Top)))
    if isinstance(e, Or):
        args = [_fold(a) for a in e.args]
        if any(isinstance(a, Top) for a in args):
            return TOP
        return disj(*(a for a in args if not isinstance(a, Bot)))
    return e


def _conjuncts(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, Top):
        return ()
    return e.args if isinstance(e, And) else (e,)


def _disjuncts(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, Bot):
        return ()
    return e.args if isinstance(e, Or) else (e,)


def _contradictory(conjuncts) -> bool:
    lits = {expr_literal(c) for c in conjuncts} - {None}
    return any(l.complement() in lits for l in lits)


def _simplify_nested(program: NestedProgram) -> NestedProgram:
    kept: list[tuple[Expr, frozenset, NestedRule]] = []
    for r in program:
        head, body = _fold(r.head), _fold(r.body)
        if isinstance(head, Top) or isinstance(body, Bot):
            continue
        conjuncts = frozenset(_conjuncts(body))
        if _contradictory(conjuncts) or set(_disjuncts(head)) & conjuncts:
            continue
        kept.append((head, conjuncts, NestedRule(head, body)))
    out = []
    for i, (head, conjuncts, rule) in enumerate(kept):
        if any(h == head and (c < conjuncts or (c == conjuncts and k < i))
               for k, (h, c, _) in enumerate(kept) if k != i):
            continue
        out.append(rule)
    return NestedProgram(out)


def _simplify_disjunctive(program: Program) -> Program:
    kept = []
    for r in program:
        if r.body_pos & r.body_neg:
            continue
        if r.head_pos & r.body_pos or r.head_neg & r.body_neg:
            continue
        kept.append(r)
    out = []
    for i, r in enumerate(kept):
        head, body = frozenset(r.head), frozenset(r.body)
        if any(frozenset(s.head) == head and (frozenset(s.body) < body
               or (frozenset(s.body) == body and k < i))
               for k, s in enumerate(kept) if k != i):
            continue
        out.append(r)
    return Program(out)


def simplify(program):
    """Drops conjuncts and rules that cannot matter, now or after further condensing.

    Constants are folded away, and a rule is removed when its body is
    contradictory, when a head literal already occurs in its body, or when
    another rule with the same head has a smaller body.
    """
    if isinstance(program, NestedProgram):
        return _simplify_nested(program)
    return _simplify_disjunctive(Program(program))


# -- sequences -----------------------------------------------------------------

def _encoded(dlp) -> list[Program]:
    if not isinstance(dlp, DLP):
        dlp = DLP(dlp)
    return [encode_constraints(p) for p in dlp]


def condense_sequence(variant: str, dlp, target: str = "nested", simplified: bool = False):
    """Folds a DLP from the empty program, constraints first encoded with `_bot`.

    With `simplified` set, :func:`simplify` runs after every step.
    """
    variant = _check_semantics(variant)
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
    programs = _encoded(dlp)
    if target == "nested":
        acc = NestedProgram()
        for p in programs:
            acc = condense(variant, acc, to_nested(p))
            if simplified:
                acc = simplify(acc)
        return acc
    acc = Program()
    for p in programs:
        acc = condense_disjunctive(variant, acc, p)
        if simplified:
            acc = simplify(acc)
    return acc


def condensed_models(program, alphabet=None, cap: int | None = None) -> set[frozenset[str]]:
    """Stable models of a condensed program with the `_bot` atom left out."""
    if isinstance(program, NestedProgram):
        return nested_stable_models(program, alphabet, cap)
    return {m - {BOT_ATOM} for m in stable_models(program, alphabet, cap)}
