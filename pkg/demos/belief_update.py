"""Compare the four belief update operators on a small knowledge base.

Run with ``python3 demos/belief_update.py``.
"""

from excupdate.belief import OPERATORS, belief_update, formula_models
from excupdate.parser import parse
from excupdate.syntax import Alphabet, format_formula

alphabet = Alphabet(("p", "q"))
base = parse("kb", "p\nq")
change = parse("kb", "!p | !q")

print("base:  ", [format_formula(f) for f in base.formulas])
print("update:", [format_formula(f) for f in change.formulas])
print()
for op in OPERATORS:
    result = belief_update(op, base, change, alphabet)
    models = sorted("".join(sorted(m)) or "-" for m in formula_models(result, alphabet))
    print(f"{op:9} {[format_formula(f) for f in result.formulas]}")
    print(f"{'':9} models: {models}")
