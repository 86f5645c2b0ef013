"""
Extrema and normalization
=========================

Per-dimension extrema come from exhaustive enumeration of that
dimension's questions. The maximum possible total accounts for questions
shared between dimensions, and normalization maps totals onto 0..10.
"""

from ethicalrisk import builtin_ers_v1, dimension_extrema, max_possible_total

fw = builtin_ers_v1()

for mode in ("literal", "gated"):
    print(f"{mode} mode:")
    for dim in fw.dimensions:
        extrema = dimension_extrema(fw, dim, mode)
        print(f"  {dim.symbol}  min={extrema.minimum}  max={extrema.maximum}")
    result = max_possible_total(fw, mode)
    print(f"  max possible total = {result.value}  (search path: {result.path})")

# the witness is a complete answer assignment attaining the maximum
witness = max_possible_total(fw, "literal").witness
worst = {str(tag): answer for tag, answer in sorted(witness.items())}
print("one worst-case audit:", worst)
