"""Causal rejection semantics for dynamic logic programs.

A rule is rejected in a candidate model when a more recent rule with the
complementary head has a satisfied body.  Under JU any such rule may reject;
under AS only rules that are not rejected themselves may.
"""

from __future__ import annotations

from typing import Iterable

from .semantics import body_holds, is_stable_mask, resolve_alphabet
from .syntax import BOT_ATOM, DLP, Alphabet, Program, Rule, encode_constraints, is_acyclic

SEMANTICS = ("JU", "AS")
PROPERTIES = ("support", "fact_update", "causal_rejection", "acyclic_justified_update")


def _check_semantics(variant: str) -> str:
    variant = variant.upper()
    if variant not in SEMANTICS:
        raise ValueError(f"unknown semantics {variant!r}; expected one of {SEMANTICS}")
    return variant


def _as_dlp(target) -> DLP:
    if isinstance(target, DLP):
        return target
    return DLP(target)


def encode_dlp(dlp: DLP) -> DLP:
    """The DLP with constraints rewritten so that every head is a single literal."""
    return DLP(encode_constraints(p) for p in _as_dlp(dlp))


def _rejected_rules(variant: str, programs: tuple[Program, ...], interp: frozenset) -> set[Rule]:
    rejected: set[Rule] = set()
    # heads of later rules that may reject, collected from the last program backwards
    active: set = set()
    for prog in reversed(programs):
        for r in prog:
            if r.head[0].complement() in active:
                rejected.add(r)
        for r in prog:
            if body_holds(r, interp) and (variant == "JU" or r not in rejected):
                active.add(r.head[0])
    return rejected


def rejected(variant: str, dlp, interp: Iterable[str]) -> frozenset[int]:
    """Ids of the rules rejected in `interp` under JU or AS."""
    variant = _check_semantics(variant)
    dlp = encode_dlp(dlp)
    return frozenset(r.uid for r in _rejected_rules(variant, dlp.programs, frozenset(interp)))


def _models(variant: str, dlp: DLP, alphabet: Alphabet | None) -> list[frozenset[str]]:
    dlp = encode_dlp(dlp)
    alphabet = resolve_alphabet(dlp, alphabet=alphabet)
    everything = dlp.all_rules()
    out = []
    for j in range(1 << alphabet.size):
        interp = alphabet.interpretation(j)
        rej = _rejected_rules(variant, dlp.programs, interp)
        if is_stable_mask([r for r in everything if r not in rej], alphabet, j):
            out.append(interp - {BOT_ATOM})
    return out


def dlp_models(variant: str, dlp, alphabet=None) -> set[frozenset[str]]:
    """All JU- or AS-models of the DLP."""
    variant = _check_semantics(variant)
    return set(_models(variant, _as_dlp(dlp), alphabet))


# -- syntactic properties --------------------------------------------------

def _supported(dlp: DLP, atom: str, interp: frozenset) -> bool:
    return any(
        atom in r.head_pos and body_holds(r, interp)
        for r in dlp.all_rules()
    )


def respects_support(dlp, models) -> bool:
    dlp = _as_dlp(dlp)
    return all(_supported(dlp, a, frozenset(m)) for m in models for a in m)


def expected_fact_update(dlp) -> frozenset[str] | None:
    """The model a fact sequence must have, or None if some program is inconsistent.

    Raises ValueError when a rule is not a fact.
    """
    dlp = _as_dlp(dlp)
    for r in dlp.all_rules():
        if len(r.head) != 1 or r.body:
            raise ValueError(f"fact update needs a sequence of facts; got a rule with id {r.uid}")
    for prog in dlp:
        heads = {r.head[0] for r in prog}
        if any(l.complement() in heads for l in heads):
            return None
    out = set()
    for i, prog in enumerate(dlp):
        for r in prog:
            lit = r.head[0]
            if lit.negated:
                continue
            later = (s.head[0] for p in dlp.programs[i + 1:] for s in p)
            if lit.complement() not in set(later):
                out.add(lit.atom)
    return frozenset(out)


def respects_fact_update(dlp, models) -> bool:
    expected = expected_fact_update(dlp)
    if expected is None:
        return True
    return {frozenset(m) for m in models} == {expected}


def respects_causal_rejection(dlp, models) -> bool:
    dlp = encode_dlp(dlp)
    for m in models:
        interp = frozenset(m)
        for i, prog in enumerate(dlp):
            later = [s for p in dlp.programs[i + 1:] for s in p if body_holds(s, interp)]
            for r in prog:
                if body_holds(r, interp) and not _head_holds(r, interp):
                    comp = r.head[0].complement()
                    if not any(s.head[0] == comp for s in later):
                        return False
    return True


def _head_holds(rule: Rule, interp: frozenset) -> bool:
    return any((l.atom in interp) != l.negated for l in rule.head)


def respects_acyclic_justified_update(dlp, models) -> bool:
    dlp = _as_dlp(dlp)
    if not is_acyclic(dlp.all_rules()):
        return True
    return {frozenset(m) for m in models} == dlp_models("JU", dlp)


def check_property(name: str, dlp, models) -> bool:
    """Evaluates a syntactic property of an update semantics on one DLP and its models."""
    checks = {
        "support": respects_support,
        "fact_update": respects_fact_update,
        "causal_rejection": respects_causal_rejection,
        "acyclic_justified_update": respects_acyclic_justified_update,
    }
    try:
        fn = checks[name]
    except KeyError:
        raise ValueError(f"unknown property {name!r}; expected one of {PROPERTIES}") from None
    return fn(dlp, models)
