"""Fold a sequence of programs into one nested and one disjunctive program.

Run with ``python3 demos/condensing.py``.
"""

from excupdate.condense import condense_sequence, condensed_models
from excupdate.parser import parse
from excupdate.syntax import format_nested_program, format_program

sequence = [parse("program", t) for t in ("p. q :- p. r.", "~p :- ~q, ~r. ~p :- s. ~r.", "p :- s. r :- r. s.")]

for semantics in ("JU", "AS"):
    nested = condense_sequence(semantics, sequence, "nested", simplified=True)
    disjunctive = condense_sequence(semantics, sequence, "disjunctive", simplified=True)
    print(f"== {semantics} ==")
    print(format_nested_program(nested))
    print("--")
    print(format_program(disjunctive))
    models = sorted(("".join(sorted(m)) for m in condensed_models(nested)))
    print("stable models:", models)
    print()
