"""
Theory consensus and audit tracing
==================================

Each principle has a row of support levels across ten ethical theories.
The weighted consensus score collapses a row into [0, 1]; an audit trace
connects risky answers to the principles they implicate.
"""

from ethicalrisk import (
    ConsensusWeights,
    builtin_ers_v1,
    load_example_audit,
    rank_principles,
    score_audit,
    trace_audit,
)

fw = builtin_ers_v1()
weights = ConsensusWeights.default()  # D=1, C=0.5, I=0.25, N=0

ranked = rank_principles(fw.matrix, weights)
print("strongest multi-theory consensus:")
for record in ranked[:5]:
    print(f"  {record.code}  {record.weighted_score}")
print("weakest:")
for record in ranked[-3:]:
    print(f"  {record.code}  {record.weighted_score}")

# trace Beta's risky answers back to principles
beta = load_example_audit("beta_ltd")
report = score_audit(fw, beta)
trace = trace_audit(fw, beta, report, weights)
print(f"\n{len(trace.entries)} risky answers; first three:")
for entry in trace.entries[:3]:
    codes = ", ".join(str(r.code) for r in entry.principles)
    print(f"  {entry.tag} ({entry.answer}, value {entry.value}) -> {codes}")
