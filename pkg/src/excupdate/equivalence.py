"""Equivalence and entailment between programs and rule bases.

Relations that compare rule by rule (SR, RR, SMR, RMR) look at the set of
model sets of the units, with the tautology always adjoined.  SU compares the
printed content of rules or program units, not their ids.
"""

from __future__ import annotations

from .semantics import (
    ModelSet, re_bits, resolve_alphabet, se_from_re, stable_masks, rules_of, units_of,
)
from .syntax import Alphabet, Program, Rule

EQUIVALENCES = ("SM", "SE", "RE", "SMR", "RMR", "SR", "RR", "SU")
ENTAILMENTS = ("SE", "RE", "SMR", "RMR", "SR", "RR", "SU")


def _unit_models(unit, kind: str, alphabet: Alphabet) -> ModelSet:
    ms = ModelSet(alphabet, re_bits(unit, alphabet))
    return se_from_re(ms) if kind == "S" else ms


def model_sets(target, kind: str, alphabet: Alphabet) -> set[ModelSet]:
    """Model sets of each unit plus the full set (the tautology is always present)."""
    out = {ModelSet.full(alphabet)}
    for u in units_of(target):
        out.add(_unit_models(u, kind, alphabet))
    return out


def _minimal(sets: set[ModelSet]) -> set[ModelSet]:
    return {s for s in sets if not any(t < s for t in sets)}


def _content(unit):
    # Programs compare by the content of their rules, rules by their literal sets
    return unit.key if isinstance(unit, Rule) else ("program", unit.key)


def _strip(target, other) -> list:
    keep = {_content(u) for u in units_of(other)}
    return [u for u in units_of(target) if _content(u) not in keep]


def _all_tautological(units, alphabet: Alphabet) -> bool:
    return all(_unit_models(u, "S", alphabet).is_full for u in units)


def _check(relation: str, allowed) -> str:
    relation = relation.upper()
    if relation not in allowed:
        raise ValueError(f"unknown relation {relation!r}; expected one of {allowed}")
    return relation


def equivalent(relation: str, p, q, alphabet=None) -> bool:
    relation = _check(relation, EQUIVALENCES)
    alphabet = resolve_alphabet(p, q, alphabet=alphabet)
    if relation == "SM":
        return stable_masks(rules_of(p), alphabet) == stable_masks(rules_of(q), alphabet)
    if relation in ("SE", "RE"):
        kind = relation[0]
        return _unit_models(Program(rules_of(p)), kind, alphabet) == \
            _unit_models(Program(rules_of(q)), kind, alphabet)
    if relation in ("SR", "RR"):
        kind = relation[0]
        return model_sets(p, kind, alphabet) == model_sets(q, kind, alphabet)
    if relation in ("SMR", "RMR"):
        kind = relation[0]
        return _minimal(model_sets(p, kind, alphabet)) == _minimal(model_sets(q, kind, alphabet))
    return _all_tautological(_strip(p, q) + _strip(q, p), alphabet)


def entails(relation: str, p, q, alphabet=None) -> bool:
    """Whether `p` entails `q` under the given relation."""
    relation = _check(relation, ENTAILMENTS)
    alphabet = resolve_alphabet(p, q, alphabet=alphabet)
    if relation in ("SE", "RE"):
        kind = relation[0]
        return _unit_models(Program(rules_of(p)), kind, alphabet) <= \
            _unit_models(Program(rules_of(q)), kind, alphabet)
    if relation == "SU":
        return _all_tautological(_strip(q, p), alphabet)
    kind = relation[0]
    ours = model_sets(p, kind, alphabet)
    for u in units_of(q):
        theirs = _unit_models(u, kind, alphabet)
        if relation in ("SMR", "RMR"):
            if not any(m <= theirs for m in ours):
                return False
        elif theirs not in ours:
            return False
    return True
