"""
Defining a custom framework
===========================

Frameworks are plain JSON documents: questions with weighted options,
formulas as DSL strings, principles, and a theory matrix. Nothing in the
engine is specific to the built-in question set.
"""

import json
import tempfile
from pathlib import Path

from ethicalrisk import lint_framework, load_framework, score_audit
from ethicalrisk.fileio import audit_from_payload

document = {
    "id": "toy-v1",
    "version": "0.1",
    "default_mode": "literal",
    "questions": [
        {"tag": "Q1.1", "text": "Was consent obtained?",
         "options": [{"key": "yes", "value": "0"}, {"key": "no", "value": "1"}],
         "gate_answer": "yes", "principles": ["P1"], "provenance": "curated"},
        {"tag": "Q1.2", "text": "Is the data sensitive?",
         "options": [{"key": "yes", "value": "2"}, {"key": "no", "value": "0"},
                     {"key": "partly", "value": "0.5"}],
         "principles": ["P1"], "provenance": "curated"},
    ],
    "dimensions": [
        {"id": "consent", "label": "Consent Risk", "symbol": "C",
         "formula": "score(Q1.1) + score(Q1.2)"},
    ],
    "total_formula": "C",
    "normalization": {"target_max": "10", "method": "max_ratio"},
    "principles": [{"code": "P1", "statement": "placeholder"}],
    "theory_matrix": {"theories": ["Utilitarianism"], "support": {"P1": "D"}},
}
# a principle family outside H/K/S is rejected: fix the code to a valid family
document["principles"] = [{"code": "S1", "statement": "Consent is required."}]
document["questions"][0]["principles"] = ["S1"]
document["questions"][1]["principles"] = ["S1"]
document["theory_matrix"]["support"] = {"S1": "D"}

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "toy.json"
    path.write_text(json.dumps(document, indent=2))
    fw = load_framework(path)
    print("lint findings:", lint_framework(fw))

    audit = audit_from_payload({
        "framework": {"id": "toy-v1", "version": "0.1"},
        "subject": {"organization": "demo"},
        "answers": {"Q1.1": "no", "Q1.2": "partly"},
    })
    report = score_audit(fw, audit)
    print("C =", report.dimension_scores["C"], " total =", report.total,
          " normalized =", report.normalized)
