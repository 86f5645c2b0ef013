"""
Scoring an audit
================

Load the built-in ERS v1 framework and one of the shipped example audits,
then compute the full score report.
"""

from ethicalrisk import builtin_ers_v1, load_example_audit, score_audit

fw = builtin_ers_v1()
audit = load_example_audit("beta_ltd")

# literal mode: answer weights exactly as published
report = score_audit(fw, audit, "literal")
print("subject:", report.subject["organization"])
for symbol, value in report.dimension_scores.items():
    print(f"  {symbol} = {value}")
print("total     :", report.total)
print("normalized:", report.normalized, "/ 10")

# gated mode: the three multiplier questions act as 0/1 validity gates,
# which changes Harm Potential for this audit
gated = score_audit(fw, audit, "gated")
print("gated H   :", gated.dimension_scores["H"], "(literal was", report.dimension_scores["H"], ")")
print("gated total:", gated.total)
