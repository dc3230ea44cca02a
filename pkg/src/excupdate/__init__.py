"""Exception-based updates of logic programs and propositional knowledge bases."""

from .belief import (
    ExceptionFunction, abstract_update, abstract_update_sequence, belief_update,
    belief_update_sequence, check_postulate, encode_exception, remainders,
)
from .causal import check_property, dlp_models, rejected
from .condense import condense_disjunctive, condense_sequence, condensed_models, simplify
from .equivalence import entails, equivalent
from .exceptions import check_semantic_property, delta, forces, in_conflict, update, update_sequence
from .parser import ParseError, parse
from .semantics import (
    CapExceeded, ModelSet, TruthValue, classical_models, materialize_program, re_models,
    se_models, stable_models,
)
from .syntax import DLP, Alphabet, KnowledgeBase, NestedProgram, NestedRule, Program, Rule, RuleBase

__all__ = [
    "Alphabet", "CapExceeded", "DLP", "ExceptionFunction", "KnowledgeBase", "ModelSet",
    "NestedProgram", "NestedRule", "ParseError", "Program", "Rule", "RuleBase", "TruthValue",
    "abstract_update", "abstract_update_sequence", "belief_update", "belief_update_sequence",
    "check_postulate", "check_property", "check_semantic_property", "classical_models",
    "condense_disjunctive", "condense_sequence", "condensed_models", "delta", "dlp_models",
    "encode_exception", "entails", "equivalent", "forces", "in_conflict", "materialize_program",
    "parse", "re_models", "rejected", "remainders", "se_models", "simplify", "stable_models",
    "update", "update_sequence",
]
