"""Report rendering: canonical machine JSON and a plain-text human form.

The machine form is the single wire format shared by the CLI and the
scoring service, byte for byte. Weights appear as decimal strings; there
are no timestamps, so identical inputs render identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .builtin import BUILTIN_ID
from .consensus import AuditTrace, PrincipleConsensus
from .fixedpoint import Weight, format_millionths
from .formula import QuestionTag
from .model import FrameworkDefinition, SupportLevel
from .registry import EXAMPLE_AUDIT_NAMES, load_example_audit
from .scoring import Audit, Contribution, ScoreReport, WhatIfDelta

MACHINE = "machine"
HUMAN = "human"

DISCREPANCY_NOTICE = (
    "Known divergence: the originally published worked example for this audit "
    "prints Harm Potential and Transparency values (and a total) that do not "
    "follow from its own scoring formulas and answer weights. This report "
    "shows the formula-derived values; see the README for the pinned cells."
)


@dataclass(frozen=True)
class RenderedReport:
    format: str  # "machine" | "human"
    body: bytes

    def text(self) -> str:
        return self.body.decode("utf-8")


def shipped_example_notices(fw: FrameworkDefinition, audit: Audit) -> list[str]:
    """The divergence notice applies when a shipped example audit is scored."""
    if fw.id != BUILTIN_ID:
        return []
    for name in EXAMPLE_AUDIT_NAMES:
        example = load_example_audit(name)
        if example.answers == audit.answers:
            return [DISCREPANCY_NOTICE]
    return []


# -- machine form -------------------------------------------------------

def report_to_payload(report: ScoreReport) -> dict:
    contributions = []
    for c in report.contributions:
        contributions.append({
            "tag": str(c.tag),
            "answer": c.answer,
            "value": str(c.value),
            "gate": c.gate,
            "dimensions": list(c.dimensions),
        })
    return {
        "framework": {"id": report.framework_id, "version": report.framework_version},
        "mode": report.mode,
        "subject": dict(report.subject),
        "dimensions": {sym: str(v) for sym, v in report.dimension_scores.items()},
        "total": str(report.total),
        "normalized": str(report.normalized),
        "max_possible": str(report.max_possible),
        "contributions": contributions,
    }


def report_from_payload(payload: dict) -> ScoreReport:
    contributions = tuple(
        Contribution(
            tag=QuestionTag.parse(c["tag"]),
            answer=c["answer"],
            value=Weight.parse(c["value"]),
            gate=c["gate"],
            dimensions=tuple(c["dimensions"]),
        )
        for c in payload["contributions"]
    )
    return ScoreReport(
        framework_id=payload["framework"]["id"],
        framework_version=payload["framework"]["version"],
        mode=payload["mode"],
        subject=dict(payload["subject"]),
        dimension_scores={sym: Weight.parse(v) for sym, v in payload["dimensions"].items()},
        total=Weight.parse(payload["total"]),
        normalized=Weight.parse(payload["normalized"]),
        max_possible=Weight.parse(payload["max_possible"]),
        contributions=contributions,
    )


def _consensus_payload(record: PrincipleConsensus) -> dict:
    return {
        "code": str(record.code),
        "counts": {level.value: record.counts[level] for level in SupportLevel},
        "weighted_score": str(record.weighted_score),
    }


def trace_to_payload(trace: AuditTrace) -> dict:
    return {
        "weights": {k: str(v) for k, v in trace.weights.as_mapping().items()},
        "entries": [
            {
                "tag": str(e.tag),
                "answer": e.answer,
                "value": str(e.value),
                "principles": [_consensus_payload(r) for r in e.principles],
            }
            for e in trace.entries
        ],
    }


def score_document(report: ScoreReport, trace: AuditTrace, notices: list[str]) -> dict:
    return {
        "report": report_to_payload(report),
        "trace": trace_to_payload(trace),
        "notices": list(notices),
    }


def document_bytes(document: dict) -> bytes:
    return (json.dumps(document, indent=2) + "\n").encode("utf-8")


def render_machine(report: ScoreReport, trace: AuditTrace,
                   notices: list[str]) -> RenderedReport:
    return RenderedReport(MACHINE, document_bytes(score_document(report, trace, notices)))


def whatif_document(delta: WhatIfDelta) -> dict:
    return {
        "question": str(delta.question),
        "old_answer": delta.old_answer,
        "new_answer": delta.new_answer,
        "deltas": {
            "dimensions": {sym: format_millionths(d)
                           for sym, d in delta.dimension_deltas.items()},
            "total": format_millionths(delta.total_delta),
        },
        "base": report_to_payload(delta.base),
        "variant": report_to_payload(delta.variant),
    }


# -- human form ---------------------------------------------------------

def _gauge(value: Weight, maximum: Weight, width: int = 20) -> str:
    if maximum.scaled <= 0:
        return "-" * width
    filled = min(width, value.scaled * width // maximum.scaled)
    return "#" * filled + "-" * (width - filled)


def render_human(fw: FrameworkDefinition, report: ScoreReport, trace: AuditTrace,
                 notices: list[str] | None = None,
                 secondary: ScoreReport | None = None) -> RenderedReport:
    """Plain-text report; pass `secondary` to show both modes side by side."""
    notices = notices or []
    lines: list[str] = []
    title = "Ethical Risk Report"
    lines.append(title)
    lines.append("=" * len(title))
    if report.subject:
        subject = ", ".join(f"{k}={v}" for k, v in report.subject.items())
    else:
        subject = "(none)"
    lines.append(f"Subject:   {subject}")
    lines.append(f"Framework: {report.framework_id} {report.framework_version}")
    if secondary is None:
        lines.append(f"Mode:      {report.mode}")
    else:
        lines.append(f"Mode:      {report.mode} (with {secondary.mode} alongside)")
    lines.append("")

    lines.append("Dimension scores")
    lines.append("----------------")
    label_width = max(len(d.label) for d in fw.dimensions)
    if secondary is None:
        for dim in fw.dimensions:
            value = report.dimension_scores[dim.symbol]
            lines.append(f"  {dim.symbol}  {dim.label:<{label_width}}  {value}")
    else:
        lines.append(f"     {'':<{label_width}}  {report.mode:<10} {secondary.mode}")
        for dim in fw.dimensions:
            first = str(report.dimension_scores[dim.symbol])
            second = str(secondary.dimension_scores[dim.symbol])
            lines.append(f"  {dim.symbol}  {dim.label:<{label_width}}  {first:<10} {second}")
    lines.append("")

    lines.append(f"ERS total: {report.total} ({report.mode} mode)")
    if secondary is not None:
        lines.append(f"ERS total: {secondary.total} ({secondary.mode} mode)")
    target = fw.normalization.target_max
    lines.append(
        f"Normalized: {report.normalized} / {target}  [{_gauge(report.normalized, target)}]"
    )
    lines.append("")

    lines.append("Contributions")
    lines.append("-------------")
    for c in report.contributions:
        gate = "" if c.gate is None else f"  gate={c.gate}"
        dims = ",".join(c.dimensions) if c.dimensions else "-"
        lines.append(f"  {str(c.tag):<6} {c.answer:<4} value={str(c.value):<9} -> {dims}{gate}")
    lines.append("")

    weights = ", ".join(f"{k}={v}" for k, v in trace.weights.as_mapping().items())
    lines.append(f"Principle trace (consensus weights {weights})")
    lines.append("---------------")
    if not trace.entries:
        lines.append("  (no risky answers)")
    for entry in trace.entries:
        lines.append(f"  {entry.tag} {entry.answer} value={entry.value}")
        for record in entry.principles:
            counts = " ".join(
                f"{level.value}{record.counts[level]}" for level in SupportLevel
            )
            statement = fw.principle_by_code(record.code).statement
            if len(statement) > 70:
                statement = statement[:67] + "..."
            lines.append(
                f"    {str(record.code):<4} consensus {record.weighted_score} "
                f"({counts})  {statement}"
            )
    for notice in notices:
        lines.append("")
        lines.append(f"NOTE: {notice}")
    lines.append("")
    return RenderedReport(HUMAN, "\n".join(lines).encode("utf-8"))


def render_whatif_human(fw: FrameworkDefinition, delta: WhatIfDelta) -> str:
    lines = [
        f"What-if: {delta.question} {delta.old_answer} -> {delta.new_answer}",
    ]
    for dim in fw.dimensions:
        change = format_millionths(delta.dimension_deltas[dim.symbol])
        lines.append(f"  {dim.symbol} delta: {change}")
    lines.append(f"  total delta: {format_millionths(delta.total_delta)}")
    lines.append(
        f"  variant total {delta.variant.total} vs base {delta.base.total} "
        f"({delta.base.mode} mode)"
    )
    return "\n".join(lines) + "\n"
