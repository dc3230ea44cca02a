"""Command-line entry point.

Exit status: 0 when the command succeeds or the checked statement holds,
1 when a checked statement does not hold, 2 on usage or parse errors and 3
when the alphabet is larger than the enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable

from . import belief, causal, condense, equivalence, exceptions
from .parser import ParseError, parse
from .semantics import (
    DEFAULT_CAP, DEFAULT_THREE_VALUED_CAP, CapExceeded, ModelSet, check_cap,
    classical_models, format_interpretation, re_models, resolve_alphabet, se_models,
    sort_interpretations, stable_models,
)
from .syntax import (
    DLP, Alphabet, KnowledgeBase, NestedProgram, Program, Rule, RuleBase,
    format_formula, format_nested_rule, format_rule,
)

SCHEMA = "excupdate/1"

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

POSTULATE_INPUTS = {
    "B2top": "B",
    "B4": "BUCV",
    "FU4": "BUCV",
    "B5": "BUV",
    "B6": "BUV",
}


class UsageError(Exception):
    pass


# -- input ---------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(kind: str, path: str, permissive: bool):
    return parse(kind, _read(path), permissive)


def _load_dlp(paths: list[str], permissive: bool) -> DLP:
    programs = []
    for path in paths:
        programs.extend(_load("dlp", path, permissive).programs)
    return DLP(programs)


def _alphabet(args, *targets) -> Alphabet:
    extra = [a.strip() for a in args.alphabet.split(",") if a.strip()] if args.alphabet else None
    alphabet = resolve_alphabet(*targets, alphabet=extra)
    return alphabet


def _cap(args, alphabet: Alphabet, three_valued: bool):
    default = DEFAULT_THREE_VALUED_CAP if three_valued else DEFAULT_CAP
    check_cap(alphabet, args.cap, default)


# -- output --------------------------------------------------------------------

def _interp_json(interp, alphabet: Alphabet) -> list[str]:
    return alphabet.sorted_atoms(a for a in interp if a in alphabet)


def _interp_lines(models: Iterable, alphabet: Alphabet) -> list[str]:
    return [format_interpretation(m, alphabet) for m in sort_interpretations(models, alphabet)]


def _interp_records(models: Iterable, alphabet: Alphabet) -> list[list[str]]:
    return [_interp_json(m, alphabet) for m in sort_interpretations(models, alphabet)]


def _pair_lines(ms: ModelSet) -> list[str]:
    a = ms.alphabet
    return [f"⟨{format_interpretation(a.interpretation(i), a)}, "
            f"{format_interpretation(a.interpretation(j), a)}⟩" for i, j in ms.pairs()]


def _units_json(rb: RuleBase, alphabet: Alphabet) -> list[dict]:
    out = []
    for u in rb:
        if isinstance(u, Rule):
            out.append({"kind": "rule", "rules": [format_rule(u, alphabet)]})
        else:
            out.append({"kind": "program",
                        "rules": [format_rule(r, alphabet) for r in u]})
    return out


def _units_text(rb: RuleBase, alphabet: Alphabet) -> list[str]:
    lines = []
    for unit in _units_json(rb, alphabet):
        if unit["kind"] == "rule":
            lines.extend(unit["rules"])
        else:
            lines.append("{")
            lines.extend("  " + r for r in unit["rules"])
            lines.append("}")
    return lines


def _emit(args, verb: str, text_lines: list[str], result: dict):
    if args.format == "structured":
        print(json.dumps({"schema": SCHEMA, "verb": verb, "result": result},
                         ensure_ascii=False, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _verdict(args, verb: str, holds: bool, extra: dict) -> int:
    _emit(args, verb, ["true" if holds else "false"], dict(extra, holds=holds))
    return EXIT_OK if holds else EXIT_FALSE


# -- verbs ---------------------------------------------------------------------

def cmd_models(args) -> int:
    rb = _load("rulebase", args.file, args.permissive)
    alphabet = _alphabet(args, rb)
    three_valued = args.kind in ("se", "re")
    _cap(args, alphabet, three_valued)
    if three_valued:
        ms = (se_models if args.kind == "se" else re_models)(rb, alphabet)
        _emit(args, "models", _pair_lines(ms),
              {"kind": args.kind, "alphabet": list(alphabet.atoms), "models": ms.to_json()})
        return EXIT_OK
    fn = classical_models if args.kind == "classical" else stable_models
    models = fn(rb, alphabet)
    _emit(args, "models", _interp_lines(models, alphabet),
          {"kind": args.kind, "alphabet": list(alphabet.atoms),
           "models": _interp_records(models, alphabet)})
    return EXIT_OK


def cmd_dlp_models(args) -> int:
    dlp = _load_dlp(args.files, args.permissive)
    alphabet = _alphabet(args, dlp)
    _cap(args, alphabet, False)
    models = causal.dlp_models(args.semantics, dlp, alphabet)
    _emit(args, "dlp-models", _interp_lines(models, alphabet),
          {"semantics": args.semantics, "alphabet": list(alphabet.atoms),
           "models": _interp_records(models, alphabet)})
    return EXIT_OK


def cmd_update(args) -> int:
    seq = [_load("rulebase", f, args.permissive) for f in args.files]
    alphabet = _alphabet(args, *seq)
    _cap(args, alphabet, True)
    rb = exceptions.update_sequence(args.delta, seq, alphabet, compact=args.compact)
    lines = _units_text(rb, alphabet)
    result = {"delta": args.delta, "alphabet": list(alphabet.atoms), "units": _units_json(rb, alphabet)}
    if args.models:
        models = stable_models(rb, alphabet)
        lines += ["%% stable models"] + _interp_lines(models, alphabet)
        result["stable_models"] = _interp_records(models, alphabet)
    _emit(args, "update", lines, result)
    return EXIT_OK


def cmd_condense(args) -> int:
    dlp = _load_dlp(args.files, args.permissive)
    alphabet = _alphabet(args, dlp)
    _cap(args, alphabet, False)
    program = condense.condense_sequence(args.semantics, dlp, args.target, args.simplify)
    if isinstance(program, NestedProgram):
        rules = [format_nested_rule(r) for r in program]
    else:
        rules = [format_rule(r, alphabet) for r in program]
    result = {"semantics": args.semantics, "target": args.target, "rules": rules}
    lines = list(rules)
    if args.models:
        models = condense.condensed_models(program, alphabet.extend(program.atoms()))
        lines += ["%% stable models"] + _interp_lines(models, alphabet)
        result["stable_models"] = _interp_records(models, alphabet)
    _emit(args, "condense", lines, result)
    return EXIT_OK


def _relation_cap(args, alphabet: Alphabet):
    _cap(args, alphabet, args.relation.upper() != "SM")


def cmd_equiv(args) -> int:
    p = _load("rulebase", args.left, args.permissive)
    q = _load("rulebase", args.right, args.permissive)
    alphabet = _alphabet(args, p, q)
    _relation_cap(args, alphabet)
    holds = equivalence.equivalent(args.relation, p, q, alphabet)
    return _verdict(args, "equiv", holds, {"relation": args.relation.upper()})


def cmd_entails(args) -> int:
    p = _load("rulebase", args.left, args.permissive)
    q = _load("rulebase", args.right, args.permissive)
    alphabet = _alphabet(args, p, q)
    _relation_cap(args, alphabet)
    holds = equivalence.entails(args.relation, p, q, alphabet)
    return _verdict(args, "entails", holds, {"relation": args.relation.upper()})


def cmd_belief(args) -> int:
    seq = [_load("kb", f, args.permissive) for f in args.files]
    alphabet = _alphabet(args, *seq)
    _cap(args, alphabet, False)
    kb = belief.belief_update_sequence(args.op, seq, alphabet)
    formulas = [format_formula(f) for f in kb.formulas]
    result = {"op": args.op, "alphabet": list(alphabet.atoms), "formulas": formulas}
    lines = list(formulas)
    if args.models:
        models = belief.formula_models(kb, alphabet)
        lines += ["%% models"] + _interp_lines(models, alphabet)
        result["models"] = _interp_records(models, alphabet)
    _emit(args, "belief", lines, result)
    return EXIT_OK


def _named_inputs(args, kind: str, letters: str) -> dict:
    out = {}
    for letter in letters:
        path = getattr(args, letter)
        if path is not None:
            out[letter] = _load(kind, path, args.permissive)
    return out


def cmd_check_postulate(args) -> int:
    needed = POSTULATE_INPUTS.get(args.name, "BU")
    # positional files fill the slots not given by flags, in B U C V order
    free = iter(x for x in "BUCV" if getattr(args, x) is None)
    for path in args.files:
        slot = next(free, None)
        if slot is None:
            raise UsageError("too many knowledge base files")
        setattr(args, slot, path)
    inputs = _named_inputs(args, "kb", "BUCV")
    missing = [x for x in needed if x not in inputs]
    if missing:
        raise UsageError(f"postulate {args.name} needs -{' -'.join(missing)}")
    alphabet = _alphabet(args, *inputs.values())
    _cap(args, alphabet, False)
    holds = belief.check_postulate(args.name, args.op, alphabet=alphabet, **inputs)
    return _verdict(args, "check-postulate", holds, {"name": args.name, "op": args.op})


def cmd_check_property(args) -> int:
    dlp = _load_dlp(args.files, args.permissive)
    alphabet = _alphabet(args, dlp)
    if args.delta:
        _cap(args, alphabet, True)
        rb = exceptions.update_sequence(args.delta, list(dlp), alphabet)
        models = stable_models(rb, alphabet)
        source = {"delta": args.delta}
    else:
        _cap(args, alphabet, False)
        models = causal.dlp_models(args.semantics, dlp, alphabet)
        source = {"semantics": args.semantics}
    holds = causal.check_property(args.name, dlp, models)
    return _verdict(args, "check-property", holds, dict(source, name=args.name))


def cmd_check_semantic_property(args) -> int:
    inputs = _named_inputs(args, "rulebase", "RSUV")
    alphabet = _alphabet(args, *inputs.values())
    _cap(args, alphabet, args.relation.upper() != "SM")
    holds = exceptions.check_semantic_property(args.property, args.delta, args.relation,
                                    alphabet=alphabet, **inputs)
    return _verdict(args, "check-semantic-property", holds,
                    {"property": args.property, "delta": args.delta,
                     "relation": args.relation.upper()})


# -- parser --------------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alphabet", metavar="ATOMS", help="comma-separated atoms added to the alphabet",
                   **({"default": None} if defaults else kw))
    p.add_argument("--cap", type=int, metavar="N", help="largest alphabet to enumerate",
                   **({"default": None} if defaults else kw))
    p.add_argument("--format", choices=("text", "structured"),
                   **({"default": "text"} if defaults else kw))
    p.add_argument("--permissive", action="store_true",
                   help="allow atoms starting with an underscore",
                   **({"default": False} if defaults else kw))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excupdate",
        description="Exception-based updates of logic programs and knowledge bases.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    common = [_common(False)]

    p = sub.add_parser("models", parents=common, help="models of a program or rule base")
    p.add_argument("--kind", choices=("classical", "stable", "se", "re"), default="stable")
    p.add_argument("file")
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("dlp-models", parents=common, help="JU- or AS-models of a DLP")
    p.add_argument("--semantics", type=str.upper, choices=causal.SEMANTICS, default="JU")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_dlp_models)

    p = sub.add_parser("update", parents=common, help="exception-based update of rule bases")
    p.add_argument("--delta", choices=exceptions.VARIANTS, required=True)
    p.add_argument("--models", action="store_true", help="also print stable models")
    p.add_argument("--compact", action="store_true",
                   help="write a single rule instead of a program where one exists")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_update)

    p = sub.add_parser("condense", parents=common, help="condense a DLP into one program")
    p.add_argument("--semantics", type=str.upper, choices=condense.SEMANTICS, default="JU")
    p.add_argument("--target", choices=condense.TARGETS, default="nested")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--models", action="store_true", help="also print stable models")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_condense)

    for verb, func, relations in (("equiv", cmd_equiv, equivalence.EQUIVALENCES),
                                  ("entails", cmd_entails, equivalence.ENTAILMENTS)):
        p = sub.add_parser(verb, parents=common, help=f"{verb} check between two rule bases")
        p.add_argument("--relation", type=str.upper, choices=relations, required=True)
        p.add_argument("left")
        p.add_argument("right")
        p.set_defaults(func=func)

    p = sub.add_parser("belief", parents=common, help="iterated belief update")
    p.add_argument("--op", choices=belief.OPERATORS, required=True)
    p.add_argument("--models", action="store_true", help="also print models")
    p.add_argument("files", nargs="+", help="knowledge base followed by its updates")
    p.set_defaults(func=cmd_belief)

    p = sub.add_parser("check-postulate", parents=common, help="evaluate a belief update postulate")
    p.add_argument("--name", choices=belief.POSTULATES, required=True)
    p.add_argument("--op", choices=belief.OPERATORS, required=True)
    for letter in "BUCV":
        p.add_argument(f"-{letter}", dest=letter, metavar="FILE")
    p.add_argument("files", nargs="*", help="B, U, C, V in order, for slots without a flag")
    p.set_defaults(func=cmd_check_postulate)

    p = sub.add_parser("check-property", parents=common,
                       help="evaluate a syntactic property of an update semantics")
    p.add_argument("--name", choices=causal.PROPERTIES, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--semantics", type=str.upper, choices=causal.SEMANTICS, default="JU")
    group.add_argument("--delta", choices=exceptions.VARIANTS)
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_check_property)

    p = sub.add_parser("check-semantic-property", parents=common,
                       help="evaluate a semantic property of an exception-based operator")
    p.add_argument("--property", choices=exceptions.PROPERTIES, required=True)
    p.add_argument("--delta", choices=exceptions.VARIANTS, required=True)
    p.add_argument("--relation", type=str.upper, choices=exceptions.RELATIONS, default="RR")
    for letter in "RSUV":
        p.add_argument(f"-{letter}", dest=letter, metavar="FILE")
    p.set_defaults(func=cmd_check_semantic_property)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"excupdate: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, UsageError, ValueError, OSError) as e:
        print(f"excupdate: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
