"""Classical belief update and its encoding as exception-based updates.

Knowledge bases are sets of propositional formulas.  Model sets are handled
as truth tables: an int whose bit ``m`` is set when the interpretation with
mask ``m`` is a model.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .semantics import atom_tables, full_table, iter_bits, resolve_alphabet
from .syntax import (
    BOT, TOP, Alphabet, And, Bot, Expr, Iff, Implies, KnowledgeBase, Not, Or, Top, Var,
    conj, disj,
)

OPERATORS = ("winslett", "widtio", "cp", "bold")
ENCODINGS = ("model_based", "formula_based", "cp_single")
POSTULATES = ("B1", "B2", "B2top", "B2.1", "B2.2", "B3", "B4", "B5", "B6", "FU1", "FU2.1", "FU4")

Selector = Callable[[list[KnowledgeBase], Alphabet], KnowledgeBase]


# -- models ----------------------------------------------------------------------

def formula_table(f: Expr, alphabet: Alphabet) -> int:
    n = alphabet.size
    full = full_table(n)
    if isinstance(f, Top):
        return full
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Var):
        return atom_tables(n)[alphabet.atoms.index(f.name)]
    if isinstance(f, Not):
        return full & ~formula_table(f.arg, alphabet)
    if isinstance(f, And):
        t = full
        for a in f.args:
            t &= formula_table(a, alphabet)
        return t
    if isinstance(f, Or):
        t = 0
        for a in f.args:
            t |= formula_table(a, alphabet)
        return t
    left, right = formula_table(f.left, alphabet), formula_table(f.right, alphabet)
    if isinstance(f, Implies):
        return (full & ~left) | right
    if isinstance(f, Iff):
        return full & ~(left ^ right)
    raise TypeError(f"not a formula: {f!r}")


def kb_table(kb: KnowledgeBase, alphabet: Alphabet) -> int:
    t = full_table(alphabet.size)
    for f in kb.formulas:
        t &= formula_table(f, alphabet)
    return t


def table_models(table: int, alphabet: Alphabet) -> set[frozenset[str]]:
    return {alphabet.interpretation(m) for m in iter_bits(table)}


def models_table(models: Iterable[Iterable[str]], alphabet: Alphabet) -> int:
    t = 0
    for m in models:
        t |= 1 << alphabet.mask(m)
    return t


def formula_models(target, alphabet=None) -> set[frozenset[str]]:
    """Classical models of a formula or of all formulas of a knowledge base."""
    alphabet = resolve_alphabet(target, alphabet=alphabet)
    if isinstance(target, KnowledgeBase):
        return table_models(kb_table(target, alphabet), alphabet)
    return table_models(formula_table(target, alphabet), alphabet)


def modr(kb: KnowledgeBase, alphabet: Alphabet) -> frozenset[int]:
    """The set of model sets of the formulas of `kb`."""
    return frozenset(formula_table(f, alphabet) for f in kb.formulas)


def modr_full(kb: KnowledgeBase, alphabet: Alphabet) -> frozenset[int]:
    """As :func:`modr` with the set of all interpretations adjoined."""
    return modr(kb, alphabet) | {full_table(alphabet.size)}


def full_dnf(table: int, alphabet: Alphabet) -> Expr:
    """The canonical formula with exactly the given models."""
    if table == full_table(alphabet.size):
        return TOP
    terms = []
    for m in iter_bits(table):
        terms.append(conj(*(
            Var(a) if m >> i & 1 else Not(Var(a)) for i, a in enumerate(alphabet.atoms)
        )))
    return disj(*terms)


# -- Winslett --------------------------------------------------------------------

def _winslett(b: int, u: int, n: int) -> int:
    targets = list(iter_bits(u))
    out = 0
    for i in iter_bits(b):
        diffs = {t: t ^ i for t in targets}
        for t, d in diffs.items():
            if not any(e != d and e & d == e for e in diffs.values()):
                out |= 1 << t
    return out


def winslett_models(base: KnowledgeBase, update: KnowledgeBase, alphabet=None) -> set[frozenset[str]]:
    """Update models closest to some model of `base` under set inclusion of the difference."""
    alphabet = resolve_alphabet(base, update, alphabet=alphabet)
    t = _winslett(kb_table(base, alphabet), kb_table(update, alphabet), alphabet.size)
    return table_models(t, alphabet)


# -- formula-based operators ------------------------------------------------------

def remainders(base: KnowledgeBase, update: KnowledgeBase, alphabet=None) -> list[KnowledgeBase]:
    """Maximal subsets of `base` consistent with `update`, in a deterministic order."""
    alphabet = resolve_alphabet(base, update, alphabet=alphabet)
    u = kb_table(update, alphabet)
    items = base.items
    tables = [formula_table(f, alphabet) for _, f in items]
    consistent: list[int] = []

    def grow(k: int, chosen: int, t: int):
        if k == len(items):
            consistent.append(chosen)
            return
        if t & tables[k]:
            grow(k + 1, chosen | 1 << k, t & tables[k])
        grow(k + 1, chosen, t)

    if u:
        grow(0, 0, u)
    maximal = [c for c in consistent if not any(d != c and d & c == c for d in consistent)]
    maximal.sort()
    return [KnowledgeBase.from_items(items[k] for k in range(len(items)) if c >> k & 1)
            for c in maximal]


def regular_selector(rems: list[KnowledgeBase], alphabet: Alphabet) -> KnowledgeBase:
    """Picks the remainder with the least sorted set of model sets, the full set included.

    Remainders with the same key have the same characterisation, so the
    choice depends only on semantics; ties go to the smallest ids.
    """
    if not rems:
        raise ValueError("cannot select from an empty set of remainders")
    return min(rems, key=lambda r: (tuple(sorted(modr_full(r, alphabet))), sorted(r.ids)))


def _as_kb(target) -> KnowledgeBase:
    if isinstance(target, KnowledgeBase):
        return target
    if isinstance(target, Expr):
        return KnowledgeBase([target])
    return KnowledgeBase(target)


def formula_update(op: str, base, update, alphabet=None,
                   selector: Selector | None = None) -> KnowledgeBase:
    """WIDTIO, Cross-Product or Bold update of `base` by `update`.

    An inconsistent update has no remainders; WIDTIO and Bold then keep only
    the update, Cross-Product adds ``false``.
    """
    base, update = _as_kb(base), _as_kb(update)
    alphabet = resolve_alphabet(base, update, alphabet=alphabet)
    rems = remainders(base, update, alphabet)
    if op == "widtio":
        if not rems:
            return update
        common = set(rems[0].ids).intersection(*(r.ids for r in rems[1:]))
        return update | base.subset(common)
    if op == "cp":
        merged = disj(*(conj(*r.formulas) for r in rems))
        return update | KnowledgeBase([merged])
    if op == "bold":
        if not rems:
            return update
        chosen = (selector or regular_selector)(rems, alphabet)
        if not any(set(chosen.ids) == set(r.ids) for r in rems):
            raise ValueError("selector returned something that is not a remainder")
        return update | chosen
    raise ValueError(f"unknown formula-based operator {op!r}")


def belief_update(op: str, base, update, alphabet=None,
                  selector: Selector | None = None) -> KnowledgeBase:
    """Any of the four operators; Winslett's result is one full-DNF formula."""
    base, update = _as_kb(base), _as_kb(update)
    alphabet = resolve_alphabet(base, update, alphabet=alphabet)
    if op == "winslett":
        t = _winslett(kb_table(base, alphabet), kb_table(update, alphabet), alphabet.size)
        return KnowledgeBase([full_dnf(t, alphabet)])
    return formula_update(op, base, update, alphabet, selector)


def belief_update_sequence(op: str, seq: Sequence, alphabet=None,
                           selector: Selector | None = None) -> KnowledgeBase:
    """Updates the first knowledge base by each of the others in turn.

    Starting from the first one has the models of a fold from the empty
    base, and Cross-Product then adds no spurious ``true`` formula.
    """
    seq = [_as_kb(k) for k in seq]
    if not seq:
        return KnowledgeBase()
    alphabet = resolve_alphabet(*seq, alphabet=alphabet)
    acc = seq[0]
    for kb in seq[1:]:
        acc = belief_update(op, acc, kb, alphabet, selector)
    return acc


# -- exception functions ----------------------------------------------------------

class ExceptionFunction:
    """Exceptions for one formula given the model sets of the base and of the update.

    ``model_based`` suits operators determined by models (Winslett),
    ``formula_based`` suits WIDTIO and regular Bold, and ``cp_single``
    reproduces Cross-Product for a single update.
    """

    def __init__(self, kind: str, op: str, selector: Selector | None = None):
        if kind not in ENCODINGS:
            raise ValueError(f"unknown encoding {kind!r}; expected one of {ENCODINGS}")
        if op not in OPERATORS:
            raise ValueError(f"unknown operator {op!r}; expected one of {OPERATORS}")
        self.kind = kind
        self.op = op
        self.selector = selector

    def __repr__(self) -> str:
        return f"ExceptionFunction({self.kind!r}, {self.op!r})"

    def __call__(self, models: int, base_sets: frozenset[int], update_sets: frozenset[int],
                 alphabet: Alphabet) -> int:
        full = full_table(alphabet.size)
        if self.kind == "model_based":
            b = full
            for s in base_sets:
                b &= s
            u = full
            for s in update_sets:
                u &= s
            base = KnowledgeBase([full_dnf(b, alphabet)])
            update = KnowledgeBase([full_dnf(u, alphabet)])
            return kb_table(belief_update(self.op, base, update, alphabet, self.selector), alphabet)
        base = _representative(base_sets, alphabet)
        update = _representative(update_sets, alphabet)
        result = belief_update(self.op, base, update, alphabet, self.selector)
        if self.kind == "cp_single":
            return kb_table(result, alphabet)
        return 0 if models in modr_full(result, alphabet) else full


def _representative(sets: Iterable[int], alphabet: Alphabet) -> KnowledgeBase:
    full = full_table(alphabet.size)
    return KnowledgeBase(full_dnf(s, alphabet) for s in sorted(set(sets)) if s != full)


def encode_exception(kind: str, op: str, selector: Selector | None = None) -> ExceptionFunction:
    return ExceptionFunction(kind, op, selector)


def abstract_update(eps: ExceptionFunction, base, update, alphabet=None) -> KnowledgeBase:
    """Adds the exceptions from `eps` to every formula of `base`, then adds `update`.

    Formulas that gain no exceptions are kept; the others are replaced by
    the full DNF of their augmented model set.
    """
    base, update = _as_kb(base), _as_kb(update)
    alphabet = resolve_alphabet(base, update, alphabet=alphabet)
    s, t = modr(base, alphabet), modr(update, alphabet)
    kept = []
    for i, f in base.items:
        m = formula_table(f, alphabet)
        aug = m | eps(m, s, t, alphabet)
        kept.append((i, f) if aug == m else (None, full_dnf(aug, alphabet)))
    fresh = KnowledgeBase([f for i, f in kept if i is None])
    return KnowledgeBase.from_items([x for x in kept if x[0] is not None]) | fresh | update


def abstract_update_sequence(eps: ExceptionFunction, seq: Sequence, alphabet=None) -> KnowledgeBase:
    seq = [_as_kb(k) for k in seq]
    alphabet = resolve_alphabet(*seq, alphabet=alphabet)
    acc = KnowledgeBase()
    for kb in seq:
        acc = abstract_update(eps, acc, kb, alphabet)
    return acc


# -- postulates ----------------------------------------------------------------------

def check_postulate(name: str, op: str, B=(), U=(), C=(), V=(), alphabet=None,
                    selector: Selector | None = None) -> bool:
    """Evaluates a belief update postulate on concrete knowledge bases.

    Conditional postulates whose premise fails hold vacuously.
    """
    if name not in POSTULATES:
        raise ValueError(f"unknown postulate {name!r}; expected one of {POSTULATES}")
    B, U, C, V = (_as_kb(x) for x in (B, U, C, V))
    alphabet = resolve_alphabet(B, U, C, V, alphabet=alphabet)

    def up(a, b):
        return belief_update(op, a, b, alphabet, selector)

    def mod(kb):
        return kb_table(kb, alphabet)

    def ent(a, b):
        return mod(a) & ~mod(b) == 0

    def eq(a, b):
        return mod(a) == mod(b)

    empty = KnowledgeBase()
    if name == "B1":
        return ent(up(B, U), U)
    if name == "B2":
        return not ent(B, U) or eq(up(B, U), B)
    if name == "B2top":
        return eq(up(B, empty), B)
    if name == "B2.1":
        return ent(B | U, up(B, U))
    if name == "B2.2":
        return ent(up(B | U, U), B)
    if name == "B3":
        return not (mod(B) and mod(U)) or bool(mod(up(B, U)))
    if name == "B4":
        return not (eq(B, C) and eq(U, V)) or eq(up(B, U), up(C, V))
    if name == "B5":
        return ent(up(B, U) | V, up(B, U | V))
    if name == "B6":
        if ent(up(B, U), V) and ent(up(B, V), U):
            return eq(up(B, U), up(B, V))
        return True
    if name == "FU1":
        return modr(up(B, U), alphabet) >= modr(U, alphabet)
    if name == "FU2.1":
        return modr(B | U, alphabet) >= modr(up(B, U), alphabet)
    # FU4
    if modr_full(B, alphabet) == modr_full(C, alphabet) and \
            modr_full(U, alphabet) == modr_full(V, alphabet):
        return modr_full(up(B, U), alphabet) == modr_full(up(C, V), alphabet)
    return True
