"""Update a rule base twice and compare the result with causal rejection.

Run with ``python3 demos/iterated_updates.py``.
"""

from excupdate.causal import dlp_models
from excupdate.exceptions import update_sequence
from excupdate.parser import parse
from excupdate.semantics import stable_models
from excupdate.syntax import DLP, Alphabet, format_rulebase


def show(models):
    return ", ".join("{" + ", ".join(sorted(m)) + "}" for m in sorted(models, key=sorted)) or "none"


texts = ["p. q :- p. r.", "~p :- ~q, ~r. ~p :- s. ~r.", "p :- s. r :- r. s."]
programs = [parse("program", t) for t in texts]
alphabet = Alphabet.of(*programs)

for k in range(1, len(programs) + 1):
    prefix = programs[:k]
    print(f"after {k} program(s):")
    for variant, semantics in (("b", "JU"), ("c", "AS")):
        result = update_sequence(variant, prefix, alphabet)
        print(f"  delta_{variant}: {show(stable_models(result, alphabet))}"
              f"   {semantics}: {show(dlp_models(semantics, DLP(prefix), alphabet))}")
print()

print("the rule base produced by delta_b after all three programs:")
print(format_rulebase(update_sequence("b", programs, alphabet, compact=True), alphabet))
