"""
What-if exploration
===================

An auditor can probe how one answer change moves the scores. Deltas are
computed by full re-scoring; the base audit is never mutated.
"""

from ethicalrisk import QuestionTag, builtin_ers_v1, load_example_audit, what_if
from ethicalrisk.fixedpoint import format_millionths

fw = builtin_ers_v1()
beta = load_example_audit("beta_ltd")

# acquiring the data properly would remove Q1.2's 0.5 risk contribution
delta = what_if(fw, beta, QuestionTag.parse("Q1.2"), "yes")
print(f"flip {delta.question}: {delta.old_answer} -> {delta.new_answer}")
for symbol, change in delta.dimension_deltas.items():
    print(f"  {symbol} delta: {format_millionths(change)}")
print("  total delta:", format_millionths(delta.total_delta))
print("  new total  :", delta.variant.total)

# probe a few candidate fixes; in literal mode Q3.5 moves nothing for Beta
# because its whole product term is multiplied by Q4.1 = 0
for tag_text in ("Q2.1", "Q2.2", "Q3.5"):
    d = what_if(fw, beta, QuestionTag.parse(tag_text), "yes" if tag_text != "Q3.5" else "no")
    print(f"flip {tag_text:<5} -> total delta {format_millionths(d.total_delta)}")
