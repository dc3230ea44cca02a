"""Exception-based updates of rule bases.

An update weakens every unit of the original rule base by adding exceptions
to its RE-models.  The exceptions come from a local function comparing one
original unit with one updating unit at a time; five such functions are
provided, selected by the letters ``a`` to ``e``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .equivalence import entails, equivalent
from .semantics import (
    ModelSet, TruthValue, grid_pos, grid_rows, grid_valid, re_bits, realize,
    resolve_alphabet, rules_of, stable_masks, subset_tables, units_of,
)
from .syntax import Alphabet, Program, Rule, RuleBase, Unit

VARIANTS = ("a", "b", "c", "d", "e")


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown exception function {variant!r}; expected one of {VARIANTS}")
    return variant


def _masks(alphabet: Alphabet, interp, atom: str) -> tuple[int, int]:
    j = interp if isinstance(interp, int) else alphabet.mask(interp)
    return j, alphabet.bit(atom)


def substitute(interp, atom: str, value: TruthValue, alphabet: Alphabet) -> tuple[frozenset, frozenset]:
    """The three-valued interpretation agreeing with J except that `atom` gets `value`."""
    j, b = _masks(alphabet, interp, atom)
    i, k = _substituted(j, b, value)
    return alphabet.interpretation(i), alphabet.interpretation(k)


def _substituted(j: int, b: int, value: TruthValue) -> tuple[int, int]:
    if value is TruthValue.T:
        return j | b, j | b
    if value is TruthValue.U:
        return j & ~b, j | b
    return j & ~b, j & ~b


def _forced(bits: int, n: int, j: int, b: int) -> TruthValue | None:
    hi, lo = j | b, j & ~b
    t = bits >> grid_pos(n, hi, hi) & 1
    u = bits >> grid_pos(n, lo, hi) & 1
    f = bits >> grid_pos(n, lo, lo) & 1
    if t + u + f != 1:
        return None
    return TruthValue.T if t else TruthValue.U if u else TruthValue.F


def forces(ms: ModelSet, interp, atom: str) -> TruthValue | None:
    """The truth value the set forces on `atom` w.r.t. J, or None if there is none."""
    j, b = _masks(ms.alphabet, interp, atom)
    return _forced(ms.bits, ms.alphabet.size, j, b)


def in_conflict(m: ModelSet, n: ModelSet, interp, atom: str) -> bool:
    fm, fn = forces(m, interp, atom), forces(n, interp, atom)
    return fm is not None and fn is not None and fm != fn


@lru_cache(maxsize=None)
def _kept_table(n: int, j: int, b: int) -> int:
    """Pairs <I, K> with I <= J <= K in which the atom keeps its value from J."""
    subs = subset_tables(n)
    full = (1 << n) - 1
    out = 0
    free = full & ~j
    s = free
    while True:
        k = j | s
        if j & b:
            # atom true in J: it must stay true in I
            low = subs[j & ~b] << b
        elif k & b:
            low = 0
        else:
            low = subs[j]
        out |= low << (k << n)
        if s == 0:
            break
        s = (s - 1) & free
    return out


@lru_cache(maxsize=None)
def _undefined_or_kept_table(n: int, j: int, b: int) -> int:
    """As :func:`_kept_table`, plus every <I, J> (the atom may become undefined when K = J)."""
    return _kept_table(n, j, b) | grid_rows(n)[j]


def _delta_bits(variant: str, m: int, nn: int, n: int) -> int:
    if variant in ("d", "e") and m == nn:
        return grid_valid(n)
    rows = grid_rows(n)
    out = 0
    for j in range(1 << n):
        for a in range(n):
            b = 1 << a
            fm = _forced(m, n, j, b)
            if fm is None:
                continue
            fn = _forced(nn, n, j, b)
            if fn is None or fm == fn:
                continue
            if variant == "a":
                out |= rows[j]
                break
            if variant in ("c", "e") and m >> grid_pos(n, j, j) & 1:
                out |= _kept_table(n, j, b)
            else:
                out |= _undefined_or_kept_table(n, j, b)
    return out


def delta(variant: str, m: ModelSet, n: ModelSet) -> ModelSet:
    """Exceptions the local function `variant` adds to M because of N."""
    _check_variant(variant)
    if m.alphabet != n.alphabet:
        raise ValueError("model sets over different alphabets")
    return ModelSet(m.alphabet, _delta_bits(variant, m.bits, n.bits, m.alphabet.size))


def exceptions(variant: str, m: ModelSet, updates: Iterable[ModelSet]) -> ModelSet:
    """Union of the local exceptions over the model sets of an updating rule base."""
    bits = 0
    for n in set(updates):
        bits |= _delta_bits(variant, m.bits, n.bits, m.alphabet.size)
    return ModelSet(m.alphabet, bits)


@lru_cache(maxsize=100_000)
def _unit_bits(unit: Unit, alphabet: Alphabet) -> int:
    return re_bits(unit, alphabet)


def update(variant: str, original, updating, alphabet=None, compact: bool = False) -> RuleBase:
    """Updates rule base `original` by `updating` with the exceptions of `variant`.

    Units whose models gain no exceptions are kept as they are.  The others
    are replaced by a program with exactly the augmented RE-models, or by a
    single rule when `compact` is set and such a rule exists.
    """
    _check_variant(variant)
    r, u = RuleBase.of(original), RuleBase.of(updating)
    alphabet = resolve_alphabet(r, u, alphabet=alphabet)
    n = alphabet.size
    targets = {_unit_bits(x, alphabet) for x in u}
    out: list[Unit] = []
    for unit in r:
        m = _unit_bits(unit, alphabet)
        aug = m
        for t in targets:
            aug |= _delta_bits(variant, m, t, n)
        out.append(unit if aug == m else realize(ModelSet(alphabet, aug), compact))
    return RuleBase(out + list(u))


def update_sequence(variant: str, seq: Sequence, alphabet=None, compact: bool = False) -> RuleBase:
    """Left fold of :func:`update` starting from the empty rule base."""
    seq = [RuleBase.of(x) for x in seq]
    alphabet = resolve_alphabet(*seq, alphabet=alphabet)
    acc = RuleBase()
    for rb in seq:
        acc = update(variant, acc, rb, alphabet, compact)
    return acc


# -- semantic properties of update operators ---------------------------------

PROPERTIES = (
    "initialisation", "disjointness", "non_interference", "tautology", "immunity",
    "idempotence", "absorption", "augmentation", "associativity",
    "P1", "P2.top", "P2.1", "P2.2", "P3", "P4", "P5", "P6",
)
RELATIONS = ("SU", "RR", "SR", "RMR", "SMR", "RE", "SE", "SM")
_ENTAILMENT_BASED = ("P1", "P2.1", "P2.2", "P5", "P6")


class NotApplicable(ValueError):
    """The property makes no sense for the chosen relation."""


def _tautological(rb: RuleBase, alphabet: Alphabet) -> bool:
    return all(_unit_bits(x, alphabet) == grid_valid(alphabet.size) for x in rb)


def _disjoint(a: RuleBase, b: RuleBase) -> bool:
    return not (set(a.atoms()) & set(b.atoms()))


def _nonempty_models(rb: RuleBase, relation: str, alphabet: Alphabet) -> bool:
    if relation == "SM":
        return bool(stable_masks(rules_of(rb), alphabet))
    bits = re_bits(rb, alphabet)
    if relation == "SE":
        n = alphabet.size
        return any(bits >> grid_pos(n, j, j) & 1 for j in range(1 << n))
    return bool(bits)


def check_semantic_property(prop: str, variant: str, relation: str, R=(), S=(), U=(), V=(),
                 alphabet=None, compact: bool = False) -> bool:
    """Evaluates a semantic property of the `variant`-based operator on concrete inputs.

    Conditional properties whose premise fails hold vacuously.
    """
    _check_variant(variant)
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    relation = relation.upper()
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}")
    if relation == "SM" and prop in _ENTAILMENT_BASED:
        raise NotApplicable(f"{prop} needs an entailment, which SM does not provide")
    if prop == "P3" and relation not in ("RE", "SE", "SM"):
        raise NotApplicable("P3 needs a single set of models")

    R, S, U, V = (RuleBase.of(x) for x in (R, S, U, V))
    alphabet = resolve_alphabet(R, S, U, V, alphabet=alphabet)

    def up(a, b):
        return update(variant, a, b, alphabet, compact)

    def eq(a, b):
        return equivalent(relation, a, b, alphabet)

    def ent(a, b):
        return entails(relation, a, b, alphabet)

    empty = RuleBase()
    if prop == "initialisation":
        return eq(up(empty, U), U)
    if prop == "disjointness":
        return not _disjoint(R, S) or eq(up(R | S, U), up(R, U) | up(S, U))
    if prop == "non_interference":
        return not _disjoint(U, V) or eq(up(up(R, U), V), up(up(R, V), U))
    if prop == "tautology":
        return not _tautological(U, alphabet) or eq(up(R, U), R)
    if prop == "immunity":
        if not (_tautological(S, alphabet) and _tautological(V, alphabet)):
            return True
        return eq(up(R | S, U | V), up(R, U))
    if prop == "idempotence":
        return eq(up(R, R), R)
    if prop == "absorption":
        return eq(up(up(R, U), U), up(R, U))
    if prop == "augmentation":
        return not U.issubset(V) or eq(up(up(R, U), V), up(R, V))
    if prop == "associativity":
        return eq(up(R, up(U, V)), up(up(R, U), V))
    if prop == "P1":
        return ent(up(R, U), U)
    if prop == "P2.top":
        return eq(up(R, empty), R)
    if prop == "P2.1":
        return ent(R | U, up(R, U))
    if prop == "P2.2":
        return ent(up(R | U, U), R)
    if prop == "P3":
        if not (_nonempty_models(R, relation, alphabet) and _nonempty_models(U, relation, alphabet)):
            return True
        return _nonempty_models(up(R, U), relation, alphabet)
    if prop == "P4":
        return not (eq(R, S) and eq(U, V)) or eq(up(R, U), up(S, V))
    if prop == "P5":
        return ent(up(R, U) | V, up(R, U | V))
    # P6
    if ent(up(R, U), V) and ent(up(R, V), U):
        return eq(up(R, U), up(R, V))
    return True
