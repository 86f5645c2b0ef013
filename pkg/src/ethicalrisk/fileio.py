"""Reading and writing framework definitions and audits as JSON documents.

Weights travel as decimal strings ("0.25"), never binary floats, on every
file and wire surface. Framework documents carry formulas as DSL source
strings. Malformed documents raise DocumentError with a pointer to the
offending key.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .fixedpoint import Weight, WeightError
from .formula import QuestionTag, parse_formula, print_formula, FormulaParseError
from .model import (
    MODES,
    AnswerOption,
    Dimension,
    FrameworkDefinition,
    NormalizationSpec,
    Principle,
    PrincipleCode,
    Question,
    SupportLevel,
    TheorySupportMatrix,
)
from .scoring import Audit


class DocumentError(ValueError):
    """A framework or audit document that does not follow the schema."""


def _require(payload: dict, key: str, kind: type, where: str) -> Any:
    if key not in payload:
        raise DocumentError(f"{where}: missing key {key!r}")
    value = payload[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{where}: key {key!r} must be {kind.__name__}")
    return value


# -- frameworks ---------------------------------------------------------

def framework_to_payload(fw: FrameworkDefinition) -> dict:
    questions = []
    for q in fw.questions:
        entry: dict[str, Any] = {
            "tag": str(q.tag),
            "text": q.text,
            "options": [{"key": o.key, "value": str(o.value)} for o in q.options],
        }
        if q.gate_answer is not None:
            entry["gate_answer"] = q.gate_answer
        entry["principles"] = [str(c) for c in q.principle_codes]
        entry["provenance"] = q.provenance
        questions.append(entry)
    support = {
        str(p.code): "".join(
            fw.matrix.entries[(p.code, t)].value for t in fw.matrix.theories
        )
        for p in fw.principles
    }
    return {
        "id": fw.id,
        "version": fw.version,
        "default_mode": fw.scoring_mode_default,
        "questions": questions,
        "dimensions": [
            {"id": d.id, "label": d.label, "symbol": d.symbol,
             "formula": print_formula(d.formula)}
            for d in fw.dimensions
        ],
        "total_formula": print_formula(fw.total_formula),
        "normalization": {
            "target_max": str(fw.normalization.target_max),
            "method": fw.normalization.method,
        },
        "principles": [{"code": str(p.code), "statement": p.statement}
                       for p in fw.principles],
        "theory_matrix": {
            "theories": list(fw.matrix.theories),
            "support": support,
        },
    }


def framework_from_payload(payload: dict) -> FrameworkDefinition:
    if not isinstance(payload, dict):
        raise DocumentError("framework document must be a JSON object")
    fw_id = _require(payload, "id", str, "framework")
    version = _require(payload, "version", str, "framework")
    default_mode = _require(payload, "default_mode", str, "framework")
    if default_mode not in MODES:
        raise DocumentError(f"framework: default_mode must be one of {MODES}")

    questions = []
    for i, raw in enumerate(_require(payload, "questions", list, "framework")):
        where = f"questions[{i}]"
        if not isinstance(raw, dict):
            raise DocumentError(f"{where}: must be an object")
        try:
            tag = QuestionTag.parse(_require(raw, "tag", str, where))
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        options = []
        for j, opt in enumerate(_require(raw, "options", list, where)):
            opt_where = f"{where}.options[{j}]"
            if not isinstance(opt, dict):
                raise DocumentError(f"{opt_where}: must be an object")
            try:
                value = Weight.parse(_require(opt, "value", str, opt_where))
            except WeightError as exc:
                raise DocumentError(f"{opt_where}: {exc}") from exc
            options.append(AnswerOption(_require(opt, "key", str, opt_where), value))
        try:
            codes = tuple(
                PrincipleCode.parse(c) for c in raw.get("principles", [])
            )
            question = Question(
                tag=tag,
                text=_require(raw, "text", str, where),
                options=tuple(options),
                gate_answer=raw.get("gate_answer"),
                principle_codes=codes,
                provenance=raw.get("provenance", "curated"),
            )
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        questions.append(question)

    dimensions = []
    for i, raw in enumerate(_require(payload, "dimensions", list, "framework")):
        where = f"dimensions[{i}]"
        if not isinstance(raw, dict):
            raise DocumentError(f"{where}: must be an object")
        try:
            formula = parse_formula(_require(raw, "formula", str, where))
            dimension = Dimension(
                id=_require(raw, "id", str, where),
                label=_require(raw, "label", str, where),
                symbol=_require(raw, "symbol", str, where),
                formula=formula,
            )
        except (FormulaParseError, ValueError) as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        dimensions.append(dimension)

    try:
        total_formula = parse_formula(_require(payload, "total_formula", str, "framework"))
    except FormulaParseError as exc:
        raise DocumentError(f"total_formula: {exc}") from exc

    raw_norm = _require(payload, "normalization", dict, "framework")
    try:
        normalization = NormalizationSpec(
            target_max=Weight.parse(_require(raw_norm, "target_max", str, "normalization")),
            method=raw_norm.get("method", "max_ratio"),
        )
    except (WeightError, ValueError) as exc:
        raise DocumentError(f"normalization: {exc}") from exc

    principles = []
    for i, raw in enumerate(_require(payload, "principles", list, "framework")):
        where = f"principles[{i}]"
        if not isinstance(raw, dict):
            raise DocumentError(f"{where}: must be an object")
        try:
            code = PrincipleCode.parse(_require(raw, "code", str, where))
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        principles.append(Principle(code, _require(raw, "statement", str, where)))

    raw_matrix = _require(payload, "theory_matrix", dict, "framework")
    theories = tuple(_require(raw_matrix, "theories", list, "theory_matrix"))
    if not all(isinstance(t, str) for t in theories):
        raise DocumentError("theory_matrix: theories must be strings")
    support = _require(raw_matrix, "support", dict, "theory_matrix")
    entries: dict[tuple[PrincipleCode, str], SupportLevel] = {}
    for code_text, row in support.items():
        where = f"theory_matrix.support[{code_text!r}]"
        try:
            code = PrincipleCode.parse(code_text)
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        if not isinstance(row, str) or len(row) != len(theories):
            raise DocumentError(
                f"{where}: expected one level character per theory ({len(theories)})")
        for theory, cell in zip(theories, row):
            try:
                entries[(code, theory)] = SupportLevel.parse(cell)
            except ValueError as exc:
                raise DocumentError(f"{where}: {exc}") from exc

    return FrameworkDefinition(
        id=fw_id,
        version=version,
        scoring_mode_default=default_mode,
        questions=tuple(questions),
        dimensions=tuple(dimensions),
        total_formula=total_formula,
        normalization=normalization,
        principles=tuple(principles),
        matrix=TheorySupportMatrix(theories=theories, entries=entries),
    )


def dump_framework(fw: FrameworkDefinition) -> str:
    return json.dumps(framework_to_payload(fw), indent=2) + "\n"


def load_framework(path: str | Path) -> FrameworkDefinition:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON: {exc}") from exc
    return framework_from_payload(payload)


# -- audits -------------------------------------------------------------

def audit_to_payload(audit: Audit) -> dict:
    payload: dict[str, Any] = {
        "framework": {"id": audit.framework_id, "version": audit.framework_version},
    }
    if audit.mode is not None:
        payload["mode"] = audit.mode
    payload["subject"] = dict(audit.subject)
    payload["answers"] = {str(tag): answer for tag, answer in sorted(audit.answers.items())}
    if audit.notes:
        payload["notes"] = {str(tag): note for tag, note in sorted(audit.notes.items())}
    return payload


def audit_from_payload(payload: dict) -> Audit:
    if not isinstance(payload, dict):
        raise DocumentError("audit document must be a JSON object")
    framework = _require(payload, "framework", dict, "audit")
    mode = payload.get("mode")
    if mode is not None and mode not in MODES:
        raise DocumentError(f"audit: mode must be one of {MODES}")
    subject = payload.get("subject", {})
    if not isinstance(subject, dict):
        raise DocumentError("audit: subject must be an object")
    answers_raw = _require(payload, "answers", dict, "audit")
    answers: dict[QuestionTag, str] = {}
    for tag_text, answer in answers_raw.items():
        if not isinstance(answer, str):
            raise DocumentError(f"audit: answer for {tag_text!r} must be a string")
        try:
            answers[QuestionTag.parse(tag_text)] = answer
        except ValueError as exc:
            raise DocumentError(f"audit: {exc}") from exc
    notes: dict[QuestionTag, str] = {}
    for tag_text, note in payload.get("notes", {}).items():
        try:
            notes[QuestionTag.parse(tag_text)] = str(note)
        except ValueError as exc:
            raise DocumentError(f"audit: {exc}") from exc
    return Audit(
        framework_id=_require(framework, "id", str, "audit.framework"),
        framework_version=_require(framework, "version", str, "audit.framework"),
        answers=answers,
        subject={str(k): str(v) for k, v in subject.items()},
        mode=mode,
        notes=notes,
    )


def dump_audit(audit: Audit) -> str:
    return json.dumps(audit_to_payload(audit), indent=2) + "\n"


def load_audit(path: str | Path) -> Audit:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON: {exc}") from exc
    return audit_from_payload(payload)
