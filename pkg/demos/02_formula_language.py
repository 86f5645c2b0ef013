"""
The formula language
====================

Dimension and total formulas are data: a small arithmetic language with
score(Q..) and gate(Q..) references. No subtraction exists, so every
formula is monotone nondecreasing in its inputs.
"""

from ethicalrisk import QuestionTag, ValueEnv, Weight, evaluate, parse_formula, print_formula
from ethicalrisk.formula import FormulaParseError

# parse and re-print canonically
expr = parse_formula("score(Q1.1)*(score(Q1.2)+score(Q1.3))")
print(print_formula(expr))

# evaluate over explicit bindings
env = ValueEnv(
    score_values={
        QuestionTag.parse("Q1.1"): Weight.parse("1"),
        QuestionTag.parse("Q1.2"): Weight.parse("0.5"),
        QuestionTag.parse("Q1.3"): Weight.parse("0.25"),
    },
    gate_values={},
    dim_values={},
)
print("value:", evaluate(expr, env))

# gates multiply a subterm by 0 or 1
gated = parse_formula("gate(Q1.1) * (score(Q1.2) + score(Q1.3))")
closed = ValueEnv(env.score_values, {QuestionTag.parse("Q1.1"): 0}, {})
print("gate closed:", evaluate(gated, closed))

# parse errors carry the offset and what was expected
try:
    parse_formula("score(Q1.1 +")
except FormulaParseError as err:
    print(f"parse error at offset {err.offset}: expected {err.expected}, found {err.found}")
