"""Classical, stable, SE- and RE-models of rules, programs and rule bases.

Two bitset encodings carry all the enumeration work:

* a *truth table* over ``n`` atoms is an int with ``2**n`` bits, bit ``k`` set
  iff interpretation ``k`` (a mask over the alphabet) satisfies the formula;
* a three-valued model set is an int over the grid ``(J << n) | I``; only
  positions with ``I`` a subset of ``J`` are ever set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .syntax import (
    RESERVED_ATOMS, TAU, TAU_ATOM, DLP, Alphabet, Literal, Program, Rule,
    RuleBase, Unit, neg, pos, unit_rules,
)

DEFAULT_CAP = 12
DEFAULT_THREE_VALUED_CAP = 9


class CapExceeded(RuntimeError):
    """The alphabet is larger than the enumeration bound allows."""


class TruthValue(enum.Enum):
    T = "T"
    U = "U"
    F = "F"


def check_cap(alphabet: Alphabet, cap: int | None, default: int) -> None:
    limit = default if cap is None else cap
    if alphabet.size > limit:
        raise CapExceeded(f"{alphabet.size} atoms exceed the enumeration cap of {limit}")


# -- precomputed tables, shared by every alphabet of the same size ---------

@lru_cache(maxsize=None)
def atom_tables(n: int) -> tuple[int, ...]:
    """Truth table of each atom: bit k set iff interpretation k contains atom i."""
    tables = []
    for i in range(n):
        t = 0
        for k in range(1 << n):
            if k >> i & 1:
                t |= 1 << k
        tables.append(t)
    return tuple(tables)


def full_table(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def subset_tables(n: int) -> tuple[int, ...]:
    """Entry J holds the truth-table bits of every subset of J."""
    subs = [0] * (1 << n)
    subs[0] = 1
    for j in range(1, 1 << n):
        low = j & -j
        rest = subs[j ^ low]
        subs[j] = rest | (rest << low)
    return tuple(subs)


@lru_cache(maxsize=None)
def grid_rows(n: int) -> tuple[int, ...]:
    """Entry J holds the three-valued bits of every pair (I, J)."""
    subs = subset_tables(n)
    return tuple(subs[j] << (j << n) for j in range(1 << n))


@lru_cache(maxsize=None)
def grid_valid(n: int) -> int:
    v = 0
    for r in grid_rows(n):
        v |= r
    return v


def grid_pos(n: int, i: int, j: int) -> int:
    return (j << n) | i


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# -- model sets ------------------------------------------------------------

@dataclass(frozen=True)
class ModelSet:
    """A set of three-valued interpretations over a fixed alphabet."""

    alphabet: Alphabet
    bits: int

    @classmethod
    def full(cls, alphabet: Alphabet) -> ModelSet:
        return cls(alphabet, grid_valid(alphabet.size))

    @classmethod
    def empty(cls, alphabet: Alphabet) -> ModelSet:
        return cls(alphabet, 0)

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable) -> ModelSet:
        """Builds a model set from (I, J) pairs given as masks or atom collections."""
        n = alphabet.size
        bits = 0
        for i, j in pairs:
            i = i if isinstance(i, int) else alphabet.mask(i)
            j = j if isinstance(j, int) else alphabet.mask(j)
            if i & ~j:
                raise ValueError("three-valued interpretation needs I to be a subset of J")
            bits |= 1 << grid_pos(n, i, j)
        return cls(alphabet, bits)

    def pairs(self) -> list[tuple[int, int]]:
        """Members as sorted (I, J) mask pairs."""
        n = self.alphabet.size
        low = (1 << n) - 1
        return sorted((p & low, p >> n) for p in iter_bits(self.bits))

    def members(self) -> set[tuple[frozenset[str], frozenset[str]]]:
        a = self.alphabet
        return {(a.interpretation(i), a.interpretation(j)) for i, j in self.pairs()}

    def has(self, i: int, j: int) -> bool:
        return bool(self.bits >> grid_pos(self.alphabet.size, i, j) & 1)

    def __contains__(self, pair) -> bool:
        i, j = pair
        i = i if isinstance(i, int) else self.alphabet.mask(i)
        j = j if isinstance(j, int) else self.alphabet.mask(j)
        return not (i & ~j) and self.has(i, j)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self):
        return iter(self.pairs())

    def _same(self, other: ModelSet) -> None:
        if other.alphabet != self.alphabet:
            raise ValueError("model sets over different alphabets")

    def __or__(self, other: ModelSet) -> ModelSet:
        self._same(other)
        return ModelSet(self.alphabet, self.bits | other.bits)

    def __and__(self, other: ModelSet) -> ModelSet:
        self._same(other)
        return ModelSet(self.alphabet, self.bits & other.bits)

    def __sub__(self, other: ModelSet) -> ModelSet:
        self._same(other)
        return ModelSet(self.alphabet, self.bits & ~other.bits)

    def complement(self) -> ModelSet:
        return ModelSet(self.alphabet, grid_valid(self.alphabet.size) & ~self.bits)

    def __le__(self, other: ModelSet) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: ModelSet) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: ModelSet) -> bool:
        return other <= self

    def __gt__(self, other: ModelSet) -> bool:
        return other < self

    @property
    def is_full(self) -> bool:
        return self.bits == grid_valid(self.alphabet.size)

    def to_json(self) -> list[dict[str, list[str]]]:
        a = self.alphabet
        return [{"I": a.sorted_atoms(a.interpretation(i)), "J": a.sorted_atoms(a.interpretation(j))}
                for i, j in self.pairs()]

    def __repr__(self) -> str:
        return f"ModelSet({format_pairs(self)})"


def format_interpretation(atoms: Iterable[str], alphabet: Alphabet | None = None) -> str:
    atoms = [a for a in atoms if a not in RESERVED_ATOMS]
    if not atoms:
        return "∅"
    names = alphabet.sorted_atoms(atoms) if alphabet else sorted(atoms)
    return "{" + ", ".join(names) + "}"


def format_pairs(ms: ModelSet) -> str:
    a = ms.alphabet
    parts = [f"⟨{format_interpretation(a.interpretation(i), a)}, "
             f"{format_interpretation(a.interpretation(j), a)}⟩" for i, j in ms.pairs()]
    return "{" + ", ".join(parts) + "}"


def interpretation_sort_key(interp: Iterable[str], alphabet: Alphabet) -> int:
    return alphabet.mask(a for a in interp if a in alphabet)


def sort_interpretations(interps: Iterable[frozenset[str]], alphabet: Alphabet) -> list[frozenset[str]]:
    return sorted(interps, key=lambda s: interpretation_sort_key(s, alphabet))


# -- targets -----------------------------------------------------------------

def rules_of(target) -> tuple[Rule, ...]:
    if isinstance(target, Rule):
        return (target,)
    if isinstance(target, Program):
        return target.rules
    if isinstance(target, RuleBase):
        return target.rules()
    if isinstance(target, DLP):
        return target.all_rules()
    return tuple(r for x in target for r in rules_of(x))


def units_of(target) -> tuple[Unit, ...]:
    """Units of a rule base; a program counts as one unit per rule."""
    if isinstance(target, Rule):
        return (target,)
    if isinstance(target, Program):
        return target.rules
    if isinstance(target, RuleBase):
        return target.units
    return tuple(target)


def resolve_alphabet(*targets, alphabet: Alphabet | Iterable[str] | None = None) -> Alphabet:
    """The given alphabet extended by the atoms of the targets, or their union."""
    found = Alphabet.of(*targets)
    if alphabet is None:
        return found
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    return alphabet.extend(found.atoms)


def _split(alphabet: Alphabet, atoms: frozenset[str]) -> tuple[int, bool]:
    """Mask of the atoms inside the alphabet and whether any fall outside."""
    outside = False
    m = 0
    for a in atoms:
        if a in alphabet.atoms:
            m |= alphabet.bit(a)
        elif a in RESERVED_ATOMS:
            outside = True
        else:
            raise ValueError(f"atom {a!r} is not in the alphabet {list(alphabet.atoms)}")
    return m, outside


def _and_tables(n: int, mask: int) -> int:
    t = full_table(n)
    for i in iter_bits(mask):
        t &= atom_tables(n)[i]
    return t


def _or_tables(n: int, mask: int) -> int:
    t = 0
    for i in iter_bits(mask):
        t |= atom_tables(n)[i]
    return t


@lru_cache(maxsize=200_000)
def _classical_table(key, alphabet: Alphabet) -> int:
    head, body = key
    n = alphabet.size
    full = full_table(n)
    hp, hp_out = _split(alphabet, frozenset(l.atom for l in head if not l.negated))
    hn, hn_out = _split(alphabet, frozenset(l.atom for l in head if l.negated))
    bp, bp_out = _split(alphabet, frozenset(l.atom for l in body if not l.negated))
    bn, _ = _split(alphabet, frozenset(l.atom for l in body if l.negated))
    if bp_out or hn_out:
        return full
    body_true = _and_tables(n, bp) & (full & ~_or_tables(n, bn))
    head_true = _or_tables(n, hp) | (full & ~_and_tables(n, hn))
    return full & (~body_true | head_true)


@dataclass(frozen=True)
class _ReductInfo:
    always_tau: bool
    head_neg: int
    body_neg: int
    table: int


@lru_cache(maxsize=200_000)
def _reduct_info(key, alphabet: Alphabet) -> _ReductInfo:
    head, body = key
    n = alphabet.size
    full = full_table(n)
    hp, _ = _split(alphabet, frozenset(l.atom for l in head if not l.negated))
    hn, hn_out = _split(alphabet, frozenset(l.atom for l in head if l.negated))
    bp, bp_out = _split(alphabet, frozenset(l.atom for l in body if not l.negated))
    bn, _ = _split(alphabet, frozenset(l.atom for l in body if l.negated))
    positive = 0 if bp_out else _and_tables(n, bp)
    table = full & (~positive | _or_tables(n, hp))
    return _ReductInfo(hn_out or table == full, hn, bn, table)


@lru_cache(maxsize=200_000)
def _rule_re_bits(key, alphabet: Alphabet) -> int:
    head, body = key
    n = alphabet.size
    valid = grid_valid(n)
    hp, _ = _split(alphabet, frozenset(l.atom for l in head if not l.negated))
    hn, hn_out = _split(alphabet, frozenset(l.atom for l in head if l.negated))
    bp, bp_out = _split(alphabet, frozenset(l.atom for l in body if not l.negated))
    bn, _ = _split(alphabet, frozenset(l.atom for l in body if l.negated))
    # <I,J> is excluded iff B+ <= I <= A\H+ and H- <= J <= A\B-
    if bp_out or hn_out or bp & hp:
        return valid
    base = hn | bp
    if base & bn:
        return valid
    subs = subset_tables(n)
    full_mask = (1 << n) - 1
    free = full_mask & ~bn & ~base
    excluded = 0
    s = free
    while True:
        j = base | s
        excluded |= (subs[j & ~hp & ~bp] << bp) << (j << n)
        if s == 0:
            break
        s = (s - 1) & free
    return valid & ~excluded


# -- satisfaction and reducts ------------------------------------------------

def _mask(alphabet: Alphabet, interp) -> int:
    return interp if isinstance(interp, int) else alphabet.mask(interp)


def satisfies(interp, target, alphabet: Alphabet | None = None) -> bool:
    """Classical satisfaction of a rule, program or rule base."""
    alphabet = resolve_alphabet(target, interp if not isinstance(interp, int) else (),
                                alphabet=alphabet)
    j = _mask(alphabet, interp)
    return all(_classical_table(r.key, alphabet) >> j & 1 for r in rules_of(target))


def body_holds(rule: Rule, interp: Iterable[str]) -> bool:
    interp = set(interp)
    return rule.body_pos <= interp and not (rule.body_neg & interp)


def reduct(rule: Rule, interp: Iterable[str]) -> Rule:
    """``H+ :- B+.`` if the default literals of the rule hold in J, else the tautology."""
    j = set(interp)
    if rule.body_neg & j or not rule.head_neg <= j:
        return TAU
    return Rule([pos(a) for a in _ordered(rule.head, False)],
                [pos(a) for a in _ordered(rule.body, False)])


def _ordered(lits: tuple[Literal, ...], negated: bool) -> list[str]:
    return [l.atom for l in lits if l.negated == negated]


def program_reduct(target, interp: Iterable[str]) -> Program:
    return Program(reduct(r, interp) for r in rules_of(target))


# -- model operators ---------------------------------------------------------

def classical_models(target, alphabet=None, cap: int | None = None) -> set[frozenset[str]]:
    alphabet = resolve_alphabet(target, alphabet=alphabet)
    check_cap(alphabet, cap, DEFAULT_CAP)
    return {alphabet.interpretation(j) for j in iter_bits(classical_table(target, alphabet))}


def classical_table(target, alphabet: Alphabet) -> int:
    t = full_table(alphabet.size)
    for r in rules_of(target):
        t &= _classical_table(r.key, alphabet)
    return t


def _stable_at(infos, j: int, n: int) -> bool:
    t = full_table(n)
    for info in infos:
        if info.body_neg & j or info.head_neg & ~j:
            continue
        t &= info.table
    return bool(t >> j & 1) and t & subset_tables(n)[j] == 1 << j


def is_stable_mask(rules: Iterable[Rule], alphabet: Alphabet, j: int) -> bool:
    """Whether the interpretation with mask `j` is a stable model of the rules."""
    infos = [info for info in (_reduct_info(r.key, alphabet) for r in rules)
             if not info.always_tau]
    return _stable_at(infos, j, alphabet.size)


def stable_masks(rules: Iterable[Rule], alphabet: Alphabet) -> list[int]:
    """Stable models as masks, by checking the reduct for every candidate."""
    n = alphabet.size
    infos = [info for info in (_reduct_info(r.key, alphabet) for r in rules)
             if not info.always_tau]
    return [j for j in range(1 << n) if _stable_at(infos, j, n)]


def stable_models(target, alphabet=None, cap: int | None = None) -> set[frozenset[str]]:
    alphabet = resolve_alphabet(target, alphabet=alphabet)
    check_cap(alphabet, cap, DEFAULT_CAP)
    return {alphabet.interpretation(j) for j in stable_masks(rules_of(target), alphabet)}


def re_bits(target, alphabet: Alphabet) -> int:
    bits = grid_valid(alphabet.size)
    for r in rules_of(target):
        bits &= _rule_re_bits(r.key, alphabet)
        if not bits:
            break
    return bits


def _se_from_re(bits: int, n: int) -> int:
    rows = grid_rows(n)
    keep = 0
    for j in range(1 << n):
        if bits >> grid_pos(n, j, j) & 1:
            keep |= rows[j]
    return bits & keep


def re_models(target, alphabet=None, cap: int | None = None) -> ModelSet:
    """Pairs <I, J> such that I satisfies the reduct of the target w.r.t. J."""
    alphabet = resolve_alphabet(target, alphabet=alphabet)
    check_cap(alphabet, cap, DEFAULT_THREE_VALUED_CAP)
    return ModelSet(alphabet, re_bits(target, alphabet))


def se_models(target, alphabet=None, cap: int | None = None) -> ModelSet:
    """Pairs <I, J> with J a model of the target and I a model of its reduct."""
    alphabet = resolve_alphabet(target, alphabet=alphabet)
    check_cap(alphabet, cap, DEFAULT_THREE_VALUED_CAP)
    return ModelSet(alphabet, _se_from_re(re_bits(target, alphabet), alphabet.size))


def se_from_re(ms: ModelSet) -> ModelSet:
    return ModelSet(ms.alphabet, _se_from_re(ms.bits, ms.alphabet.size))


def stable_from_re(ms: ModelSet) -> set[frozenset[str]]:
    """J such that <J, J> is the only member of the set with second component J."""
    n = ms.alphabet.size
    rows = grid_rows(n)
    return {ms.alphabet.interpretation(j) for j in range(1 << n)
            if ms.bits & rows[j] == 1 << grid_pos(n, j, j)}


def is_tautological(rule: Rule, alphabet=None) -> bool:
    return re_models(rule, alphabet).is_full


# -- canonical rules ---------------------------------------------------------

def _build(head_pos, head_neg, body_pos, body_neg, alphabet: Alphabet | None = None) -> Rule:
    order = alphabet.sorted_atoms if alphabet is not None else sorted
    head = [pos(a) for a in order(head_pos)] + [neg(a) for a in order(head_neg)]
    body = [pos(a) for a in order(body_pos)] + [neg(a) for a in order(body_neg)]
    return Rule(head, body)


def canonicalize(kind: str, rule: Rule) -> Rule:
    """The SE- or RE-canonical rule equivalent to `rule`."""
    kind = kind.upper()
    if kind not in ("SE", "RE"):
        raise ValueError(f"unknown canonical form {kind!r}")
    hp, hn, bp, bn = rule.head_pos, rule.head_neg, rule.body_pos, rule.body_neg
    if hp & bp or hn & bn or bp & bn:
        return TAU
    if kind == "SE" and not (hp - bn):
        return _build((), (), bp | hn, bn)
    return _build(hp - bn, hn - bp, bp, bn)


def is_re_canonical(rule: Rule) -> bool:
    if rule.key == TAU.key:
        return True
    h = rule.head_pos | rule.head_neg
    return not (h & rule.body_pos or h & rule.body_neg or rule.body_pos & rule.body_neg)


@lru_cache(maxsize=None)
def _atom_grid_masks(n: int) -> tuple[tuple[int, int], ...]:
    """For each atom: grid bits with the atom in J, and with the atom in I."""
    out = []
    for a in range(n):
        in_j = in_i = 0
        for j in range(1 << n):
            if not j >> a & 1:
                continue
            in_j |= grid_rows(n)[j]
        for p in iter_bits(grid_valid(n)):
            if p >> a & 1:
                in_i |= 1 << p
        out.append((in_j, in_i))
    return tuple(out)


def induce_rule(ms: ModelSet) -> Rule:
    """The rule read off a model set; inverse of re_models on RE-canonical rules."""
    if ms.is_full:
        return TAU
    n = ms.alphabet.size
    valid = grid_valid(n)
    missing = valid & ~ms.bits
    masks = _atom_grid_masks(n)
    bn, hp, bp, hn = set(), set(), set(), set()
    for i, atom in enumerate(ms.alphabet.atoms):
        in_j, in_i = masks[i]
        if not missing & in_j:
            bn.add(atom)
        if not missing & in_i:
            hp.add(atom)
        if not missing & (valid & ~in_i):
            bp.add(atom)
        if not missing & (valid & ~in_j):
            hn.add(atom)
    return _build(hp - bn, hn - bp, bp, bn, ms.alphabet)


def materialize_program(ms: ModelSet) -> Program:
    """A program whose RE-models are exactly the given set: one rule per missing pair."""
    a = ms.alphabet
    full = (1 << a.size) - 1
    rules = []
    for i, j in ModelSet(a, grid_valid(a.size) & ~ms.bits).pairs():
        rules.append(_build(a.interpretation(full & ~i), a.interpretation(j),
                            a.interpretation(i), a.interpretation(full & ~j), a))
    return Program(rules)


def realize(ms: ModelSet, compact: bool = False) -> Unit:
    """A unit with the given RE-models; a single rule when one exists and `compact` is set."""
    if compact:
        r = induce_rule(ms)
        if re_models(r, ms.alphabet).bits == ms.bits:
            return r
    return materialize_program(ms)


__all__ = [
    "CapExceeded", "DEFAULT_CAP", "DEFAULT_THREE_VALUED_CAP", "ModelSet", "TruthValue",
    "body_holds", "canonicalize", "classical_models", "format_interpretation", "format_pairs",
    "induce_rule", "is_re_canonical", "is_tautological", "materialize_program", "re_models",
    "realize", "reduct", "satisfies", "se_from_re", "se_models", "sort_interpretations",
    "stable_from_re", "stable_models", "TAU_ATOM",
]
