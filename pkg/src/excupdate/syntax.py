"""Propositional rules, programs, nested expressions and classical formulas.

Every rule and program carries an opaque integer id.  Collections such as
rule bases and DLPs key their set operations on these ids, so two rules with
the same text are still different members.  Structural comparisons go
through :attr:`Rule.key` instead.
"""

from __future__ import annotations

import graphlib
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

ATOM_PATTERN = re.compile(r"[a-z_][A-Za-z0-9_]*\Z")
TAU_ATOM = "_tau"
BOT_ATOM = "_bot"
RESERVED_ATOMS = frozenset({TAU_ATOM, BOT_ATOM})

_id_counter = itertools.count(1)


def fresh_id() -> int:
    return next(_id_counter)


def check_atom(name: str, permissive: bool = False) -> str:
    if not ATOM_PATTERN.match(name):
        raise ValueError(f"invalid atom name {name!r}")
    if name.startswith("_") and not permissive and name not in RESERVED_ATOMS:
        raise ValueError(f"atom {name!r} uses the reserved '_' prefix")
    return name


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def complement(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def __str__(self) -> str:
        return f"~{self.atom}" if self.negated else self.atom


def pos(atom: str) -> Literal:
    return Literal(atom, False)


def neg(atom: str) -> Literal:
    return Literal(atom, True)


def _unique(items: Iterable) -> tuple:
    return tuple(dict.fromkeys(items))


class Rule:
    """A rule ``head :- body.`` whose head and body are sets of literals.

    Literal order is kept only for printing.  Equality and hashing use the id.
    """

    __slots__ = ("head", "body", "uid")

    def __init__(self, head: Iterable[Literal] = (), body: Iterable[Literal] = (),
                 uid: int | None = None):
        object.__setattr__(self, "head", _unique(head))
        object.__setattr__(self, "body", _unique(body))
        object.__setattr__(self, "uid", fresh_id() if uid is None else uid)

    def __setattr__(self, name, value):
        raise AttributeError("rules are immutable")

    @classmethod
    def from_atoms(cls, head_pos: Iterable[str] = (), head_neg: Iterable[str] = (),
                   body_pos: Iterable[str] = (), body_neg: Iterable[str] = ()) -> Rule:
        head = [pos(a) for a in head_pos] + [neg(a) for a in head_neg]
        body = [pos(a) for a in body_pos] + [neg(a) for a in body_neg]
        return cls(head, body)

    @property
    def head_pos(self) -> frozenset[str]:
        return frozenset(l.atom for l in self.head if not l.negated)

    @property
    def head_neg(self) -> frozenset[str]:
        return frozenset(l.atom for l in self.head if l.negated)

    @property
    def body_pos(self) -> frozenset[str]:
        return frozenset(l.atom for l in self.body if not l.negated)

    @property
    def body_neg(self) -> frozenset[str]:
        return frozenset(l.atom for l in self.body if l.negated)

    @property
    def key(self) -> tuple[frozenset[Literal], frozenset[Literal]]:
        """Structural identity: the head and body as literal sets."""
        return frozenset(self.head), frozenset(self.body)

    def atoms(self) -> tuple[str, ...]:
        return _unique(l.atom for l in self.head + self.body)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rule) and other.uid == self.uid

    def __hash__(self) -> int:
        return hash(("rule", self.uid))

    def __repr__(self) -> str:
        return f"Rule({format_rule(self)!r}, uid={self.uid})"

    def __str__(self) -> str:
        return format_rule(self)


# The canonical tautology.  `_tau` never belongs to an alphabet, so it is
# false in every interpretation and the rule holds everywhere.
TAU = Rule([pos(TAU_ATOM)], [pos(TAU_ATOM)])


class Program:
    """A finite set of rules, itself identified by an id."""

    __slots__ = ("rules", "uid")

    def __init__(self, rules: Iterable[Rule] = (), uid: int | None = None):
        rules = tuple(rules)
        if len({r.uid for r in rules}) != len(rules):
            rules = _unique(rules)
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "uid", fresh_id() if uid is None else uid)

    def __setattr__(self, name, value):
        raise AttributeError("programs are immutable")

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, rule) -> bool:
        return rule in self.rules

    @property
    def key(self) -> frozenset:
        return frozenset(r.key for r in self.rules)

    def atoms(self) -> tuple[str, ...]:
        return _unique(a for r in self.rules for a in r.atoms())

    def __eq__(self, other) -> bool:
        return isinstance(other, Program) and other.uid == self.uid

    def __hash__(self) -> int:
        return hash(("program", self.uid))

    def __repr__(self) -> str:
        return f"Program({len(self.rules)} rules, uid={self.uid})"


Unit = Union[Rule, Program]


class RuleBase:
    """A set of units, each unit being a rule or a whole program."""

    __slots__ = ("units",)

    def __init__(self, units: Iterable[Unit] = ()):
        object.__setattr__(self, "units", _unique(units))

    def __setattr__(self, name, value):
        raise AttributeError("rule bases are immutable")

    @classmethod
    def of(cls, target) -> RuleBase:
        """Views a rule, a program (one unit per rule) or a rule base as a rule base."""
        if isinstance(target, RuleBase):
            return target
        if isinstance(target, Rule):
            return cls([target])
        if isinstance(target, Program):
            return cls(target.rules)
        return cls(target)

    def __iter__(self) -> Iterator[Unit]:
        return iter(self.units)

    def __len__(self) -> int:
        return len(self.units)

    def __contains__(self, unit) -> bool:
        return unit in self.units

    def __or__(self, other: RuleBase) -> RuleBase:
        return RuleBase(self.units + RuleBase.of(other).units)

    def __sub__(self, other: RuleBase) -> RuleBase:
        drop = set(RuleBase.of(other).units)
        return RuleBase(u for u in self.units if u not in drop)

    def issubset(self, other: RuleBase) -> bool:
        return set(self.units) <= set(RuleBase.of(other).units)

    def rules(self) -> tuple[Rule, ...]:
        return _unique(r for u in self.units for r in unit_rules(u))

    def atoms(self) -> tuple[str, ...]:
        return _unique(a for r in self.rules() for a in r.atoms())

    def __eq__(self, other) -> bool:
        return isinstance(other, RuleBase) and set(other.units) == set(self.units)

    def __hash__(self) -> int:
        return hash(frozenset(self.units))

    def __repr__(self) -> str:
        return f"RuleBase({len(self.units)} units)"


def unit_rules(unit: Unit) -> tuple[Rule, ...]:
    return (unit,) if isinstance(unit, Rule) else unit.rules


class DLP:
    """A finite sequence of non-disjunctive programs."""

    __slots__ = ("programs",)

    def __init__(self, programs: Iterable[Program | Iterable[Rule]]):
        progs = tuple(p if isinstance(p, Program) else Program(p) for p in programs)
        seen = set()
        for p in progs:
            for r in p:
                if len(r.head) > 1:
                    raise ValueError(f"disjunctive rule in DLP: {r}")
                if r.uid in seen:
                    raise ValueError(f"rule id {r.uid} occurs twice in DLP")
                seen.add(r.uid)
        object.__setattr__(self, "programs", progs)

    def __setattr__(self, name, value):
        raise AttributeError("DLPs are immutable")

    def __iter__(self) -> Iterator[Program]:
        return iter(self.programs)

    def __len__(self) -> int:
        return len(self.programs)

    def __getitem__(self, i):
        return self.programs[i]

    def all_rules(self) -> tuple[Rule, ...]:
        return tuple(r for p in self.programs for r in p)

    def atoms(self) -> tuple[str, ...]:
        return _unique(a for r in self.all_rules() for a in r.atoms())

    def __repr__(self) -> str:
        return f"DLP({[len(p) for p in self.programs]})"


# -- expressions ---------------------------------------------------------

class Expr:
    """Base class of nested expressions and classical formulas."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Expr):
    def __repr__(self):
        return "TOP"


@dataclass(frozen=True)
class Bot(Expr):
    def __repr__(self):
        return "BOT"


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Not(Expr):
    arg: Expr


@dataclass(frozen=True)
class And(Expr):
    args: tuple


@dataclass(frozen=True)
class Or(Expr):
    args: tuple


@dataclass(frozen=True)
class Implies(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Iff(Expr):
    left: Expr
    right: Expr


def conj(*args: Expr) -> Expr:
    """N-ary conjunction, flattened; the empty conjunction is TOP."""
    flat = []
    for a in args:
        flat.extend(a.args if isinstance(a, And) else (a,))
    if not flat:
        return TOP
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args: Expr) -> Expr:
    """N-ary disjunction, flattened; the empty disjunction is BOT."""
    flat = []
    for a in args:
        flat.extend(a.args if isinstance(a, Or) else (a,))
    if not flat:
        return BOT
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def literal_expr(l: Literal) -> Expr:
    return Not(Var(l.atom)) if l.negated else Var(l.atom)


def expr_literal(e: Expr) -> Literal | None:
    """The literal an expression spells, if it is a literal."""
    if isinstance(e, Var):
        return pos(e.name)
    if isinstance(e, Not) and isinstance(e.arg, Var):
        return neg(e.arg.name)
    return None


def expr_atoms(e: Expr) -> tuple[str, ...]:
    out: dict[str, None] = {}

    def walk(x):
        if isinstance(x, Var):
            out[x.name] = None
        elif isinstance(x, Not):
            walk(x.arg)
        elif isinstance(x, (And, Or)):
            for a in x.args:
                walk(a)
        elif isinstance(x, (Implies, Iff)):
            walk(x.left)
            walk(x.right)

    walk(e)
    return tuple(out)


@dataclass(frozen=True)
class NestedRule:
    head: Expr
    body: Expr = TOP

    def atoms(self) -> tuple[str, ...]:
        return _unique(expr_atoms(self.head) + expr_atoms(self.body))

    def __str__(self) -> str:
        return format_nested_rule(self)


class NestedProgram:
    """A finite set of nested rules, compared by content."""

    __slots__ = ("rules",)

    def __init__(self, rules: Iterable[NestedRule] = ()):
        object.__setattr__(self, "rules", _unique(rules))

    def __setattr__(self, name, value):
        raise AttributeError("nested programs are immutable")

    def __iter__(self) -> Iterator[NestedRule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __eq__(self, other) -> bool:
        return isinstance(other, NestedProgram) and set(self.rules) == set(other.rules)

    def __hash__(self) -> int:
        return hash(frozenset(self.rules))

    def atoms(self) -> tuple[str, ...]:
        return _unique(a for r in self.rules for a in r.atoms())

    def __repr__(self) -> str:
        return f"NestedProgram({len(self.rules)} rules)"


class KnowledgeBase:
    """A finite set of formulas; each member is tagged with its own id."""

    __slots__ = ("items",)

    def __init__(self, formulas: Iterable[Expr] = (), ids: Iterable[int] | None = None):
        formulas = tuple(formulas)
        ids = tuple(ids) if ids is not None else tuple(fresh_id() for _ in formulas)
        if len(ids) != len(formulas) or len(set(ids)) != len(ids):
            raise ValueError("knowledge base ids must be distinct, one per formula")
        object.__setattr__(self, "items", tuple(zip(ids, formulas)))

    def __setattr__(self, name, value):
        raise AttributeError("knowledge bases are immutable")

    @classmethod
    def from_items(cls, items: Iterable[tuple[int, Expr]]) -> KnowledgeBase:
        items = list(dict(items).items())
        return cls([f for _, f in items], [i for i, _ in items])

    @property
    def formulas(self) -> tuple[Expr, ...]:
        return tuple(f for _, f in self.items)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.items)

    def subset(self, ids: Iterable[int]) -> KnowledgeBase:
        keep = set(ids)
        return KnowledgeBase.from_items((i, f) for i, f in self.items if i in keep)

    def __or__(self, other: KnowledgeBase) -> KnowledgeBase:
        return KnowledgeBase.from_items(self.items + other.items)

    def __iter__(self) -> Iterator[Expr]:
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.items)

    def atoms(self) -> tuple[str, ...]:
        return _unique(a for f in self.formulas for a in expr_atoms(f))

    def __repr__(self) -> str:
        return "KnowledgeBase([" + ", ".join(format_formula(f) for f in self.formulas) + "])"


# -- alphabets -----------------------------------------------------------

@dataclass(frozen=True)
class Alphabet:
    """An ordered list of atoms; position i is bit i of an interpretation mask."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if len(set(atoms)) != len(atoms):
            raise ValueError("duplicate atoms in alphabet")
        for a in atoms:
            if not ATOM_PATTERN.match(a):
                raise ValueError(f"invalid atom name {a!r}")
            if a == TAU_ATOM:
                raise ValueError("_tau cannot be part of an alphabet")

    @classmethod
    def of(cls, *values, extra: Iterable[str] = ()) -> Alphabet:
        """Ordered union of the atoms of the given values, then of `extra`."""
        seen: dict[str, None] = {}
        for v in values:
            for a in atoms_of(v):
                seen[a] = None
        for a in extra:
            seen[a] = None
        seen.pop(TAU_ATOM, None)
        return cls(tuple(seen))

    def extend(self, atoms: Iterable[str]) -> Alphabet:
        return Alphabet(_unique(self.atoms + tuple(a for a in atoms if a != TAU_ATOM)))

    @property
    def size(self) -> int:
        return len(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, atom) -> bool:
        return atom in self.atoms

    def bit(self, atom: str) -> int:
        return 1 << self.atoms.index(atom)

    def mask(self, atoms: Iterable[str]) -> int:
        m = 0
        for a in atoms:
            if a in self.atoms:
                m |= 1 << self.atoms.index(a)
            elif a not in RESERVED_ATOMS:
                raise ValueError(f"atom {a!r} is not in the alphabet {list(self.atoms)}")
        return m

    def interpretation(self, mask: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    def sorted_atoms(self, atoms: Iterable[str]) -> list[str]:
        order = {a: i for i, a in enumerate(self.atoms)}
        return sorted(atoms, key=lambda a: (order.get(a, len(order)), a))


def atoms_of(value) -> tuple[str, ...]:
    if isinstance(value, (Rule, Program, RuleBase, DLP, NestedRule, NestedProgram,
                          KnowledgeBase)):
        return value.atoms()
    if isinstance(value, Expr):
        return expr_atoms(value)
    if isinstance(value, Alphabet):
        return value.atoms
    if isinstance(value, str):
        return (value,)
    if isinstance(value, Iterable):
        return _unique(a for v in value for a in atoms_of(v))
    raise TypeError(f"cannot collect atoms of {type(value).__name__}")


# -- classification ------------------------------------------------------

def classify(rule: Rule) -> set[str]:
    hp, hn, bp, bn = rule.head_pos, rule.head_neg, rule.body_pos, rule.body_neg
    flags = set()
    if len(rule.head) <= 1:
        flags.add("non_disjunctive")
    if len(rule.head) == 1 and not rule.body:
        flags.add("fact")
    if not rule.head and not (bp & bn):
        flags.add("constraint")
    if not hp and hn and not (hn & bp) and not (hn & bn) and not (bp & bn):
        flags.add("abolishing")
    if (hp | hn) & (bp | bn):
        flags.add("local_cycle")
    if rule.key == TAU.key:
        flags.add("tautological_syntactic")
    return flags


def is_local_cycle(rule: Rule) -> bool:
    return bool((rule.head_pos | rule.head_neg) & (rule.body_pos | rule.body_neg))


def is_acyclic(program: Program | Iterable[Rule]) -> bool:
    """True iff no atom depends on itself through head-to-body edges."""
    graph: dict[str, set[str]] = {}
    for r in program:
        body = r.body_pos | r.body_neg
        for l in r.head:
            graph.setdefault(l.atom, set()).update(body)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError:
        return False
    return True


def encode_constraints(program: Program) -> Program:
    """Rewrites each empty-headed rule as ``_bot :- ~_bot, body.``, keeping ids."""
    rules = []
    for r in program:
        if r.head:
            rules.append(r)
        else:
            rules.append(Rule([pos(BOT_ATOM)], (neg(BOT_ATOM),) + r.body, uid=r.uid))
    return Program(rules, uid=program.uid)


# -- printing ------------------------------------------------------------

def _lits(lits: Iterable[Literal], alphabet: Alphabet | None) -> list[Literal]:
    lits = list(lits)
    if alphabet is None:
        return lits
    order = {a: i for i, a in enumerate(alphabet.atoms)}
    return sorted(lits, key=lambda l: (order.get(l.atom, len(order)), l.atom, l.negated))


def format_rule(rule: Rule, alphabet: Alphabet | None = None) -> str:
    head = "; ".join(map(str, _lits(rule.head, alphabet)))
    body = ", ".join(map(str, _lits(rule.body, alphabet)))
    if not body:
        return f"{head}." if head else ":- ."
    return f"{head} :- {body}." if head else f":- {body}."


def format_program(program: Program | Iterable[Rule], alphabet: Alphabet | None = None) -> str:
    rules = sorted(program, key=lambda r: r.uid)
    return "\n".join(format_rule(r, alphabet) for r in rules)


def format_rulebase(rb: RuleBase, alphabet: Alphabet | None = None) -> str:
    lines = []
    for u in sorted(rb.units, key=lambda u: u.uid):
        if isinstance(u, Rule):
            lines.append(format_rule(u, alphabet))
        else:
            lines.append("{")
            lines.extend("  " + format_rule(r, alphabet) for r in sorted(u, key=lambda r: r.uid))
            lines.append("}")
    return "\n".join(lines)


def format_dlp(dlp: DLP, alphabet: Alphabet | None = None) -> str:
    return "\n%%\n".join(format_program(p, alphabet) for p in dlp)


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}


def _format_expr(e: Expr, negation: str, implications: bool) -> str:
    def go(x: Expr, parent: int) -> str:
        if isinstance(x, Top):
            return "true"
        if isinstance(x, Bot):
            return "false"
        if isinstance(x, Var):
            return x.name
        if isinstance(x, Not):
            return negation + go(x.arg, 5)
        prec = _PREC[type(x)]
        if isinstance(x, (And, Or)):
            sep = " & " if isinstance(x, And) else " | "
            text = sep.join(go(a, prec) for a in x.args)
        else:
            op = " -> " if isinstance(x, Implies) else " <-> "
            text = go(x.left, prec + 1) + op + go(x.right, prec)
        mixed = isinstance(x, (And, Or)) and parent in (_PREC[And], _PREC[Or])
        return f"({text})" if prec <= parent or mixed else text

    return go(e, 0)


def format_nested_expr(e: Expr) -> str:
    return _format_expr(e, "~", False)


def format_nested_rule(r: NestedRule) -> str:
    body = "" if r.body == TOP else format_nested_expr(r.body)
    if r.head == BOT:
        return f":- {body or 'true'}."
    head = format_nested_expr(r.head)
    return f"{head} :- {body}." if body else f"{head}."


def format_nested_program(p: NestedProgram) -> str:
    return "\n".join(format_nested_rule(r) for r in p)


def format_formula(f: Expr) -> str:
    return _format_expr(f, "!", True)


def format_kb(kb: KnowledgeBase) -> str:
    return "\n".join(format_formula(f) for f in kb.formulas)


def to_text(value, alphabet: Alphabet | None = None) -> str:
    """Prints any syntactic value in the grammar accepted by :func:`parse`."""
    if isinstance(value, Rule):
        return format_rule(value, alphabet)
    if isinstance(value, Program):
        return format_program(value, alphabet)
    if isinstance(value, RuleBase):
        return format_rulebase(value, alphabet)
    if isinstance(value, DLP):
        return format_dlp(value, alphabet)
    if isinstance(value, NestedRule):
        return format_nested_rule(value)
    if isinstance(value, NestedProgram):
        return format_nested_program(value)
    if isinstance(value, KnowledgeBase):
        return format_kb(value)
    if isinstance(value, Expr):
        return format_formula(value)
    raise TypeError(f"cannot print {type(value).__name__}")
