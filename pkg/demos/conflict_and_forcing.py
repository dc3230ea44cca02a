"""Walk through truth-value forcing and conflicts for two single-rule programs.

Run with ``python3 demos/conflict_and_forcing.py``.
"""

from excupdate.exceptions import VARIANTS, delta, forces, in_conflict
from excupdate.parser import parse
from excupdate.semantics import format_pairs, re_models
from excupdate.syntax import Alphabet

alphabet = Alphabet(("p", "q"))
old = re_models(parse("rule", "p."), alphabet)
new = re_models(parse("rule", "~p :- ~q."), alphabet)

print("RE-models of  p.        :", format_pairs(old))
print("RE-models of  ~p :- ~q. :", format_pairs(new))
print()

for j in (frozenset(), frozenset("p"), frozenset("q"), frozenset("pq")):
    label = "{" + ", ".join(sorted(j)) + "}"
    a, b = forces(old, j, "p"), forces(new, j, "p")
    print(f"J = {label:7} old forces p to {a and a.name}, new forces p to {b and b.name},",
          "conflict" if in_conflict(old, new, j, "p") else "no conflict")
print()

# each variant turns the conflicts into a set of exceptions for the old rule
for v in VARIANTS:
    print(f"delta_{v}:", format_pairs(delta(v, old, new)))
