"""Multi-theory consensus metrics and audit-to-principle tracing.

The support matrix records each theory's stance per principle as an
ordinal level (direct, conditional, indirect, neutral). The weighted
consensus score collapses one principle's row into [0, 1]:

    weighted_score = sum(w(level) * count(level)) / (w(D) * num_theories)

The level weights are configuration, not truth; every output carries the
weights it was computed with. The default encodes only the ordinal
D > C > I > N.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fixedpoint import SCALE, Weight, div_round_half_up
from .formula import QuestionTag
from .model import (
    FrameworkDefinition,
    MatrixKeyError,
    PrincipleCode,
    SupportLevel,
    TheorySupportMatrix,
)
from .scoring import Audit, ScoreReport, ValidationIssue, AuditValidationError


@dataclass(frozen=True)
class ConsensusWeights:
    """Numeric weight per support level; must respect D >= C >= I >= N >= 0, D > 0."""

    direct: Weight
    conditional: Weight
    indirect: Weight
    neutral: Weight

    def __post_init__(self) -> None:
        ordered = (self.direct, self.conditional, self.indirect, self.neutral)
        if any(a < b for a, b in zip(ordered, ordered[1:])):
            raise ValueError("consensus weights must satisfy D >= C >= I >= N")
        if self.direct.scaled <= 0:
            raise ValueError("weight for direct support must be positive")

    @classmethod
    def default(cls) -> "ConsensusWeights":
        return cls(
            direct=Weight.parse("1"),
            conditional=Weight.parse("0.5"),
            indirect=Weight.parse("0.25"),
            neutral=Weight.parse("0"),
        )

    @classmethod
    def parse(cls, spec: str) -> "ConsensusWeights":
        """Parse "D=1,C=0.5,I=0.25,N=0"; omitted levels keep their default."""
        values = {
            "D": Weight.parse("1"), "C": Weight.parse("0.5"),
            "I": Weight.parse("0.25"), "N": Weight.parse("0"),
        }
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            level, _, number = part.partition("=")
            level = level.strip().upper()
            if level not in values or not number:
                raise ValueError(f"bad consensus weight entry {part!r}, expected LEVEL=value")
            values[level] = Weight.parse(number.strip())
        return cls(values["D"], values["C"], values["I"], values["N"])

    def weight(self, level: SupportLevel) -> Weight:
        return {
            SupportLevel.DIRECT: self.direct,
            SupportLevel.CONDITIONAL: self.conditional,
            SupportLevel.INDIRECT: self.indirect,
            SupportLevel.NEUTRAL: self.neutral,
        }[level]

    def as_mapping(self) -> dict[str, Weight]:
        return {"D": self.direct, "C": self.conditional,
                "I": self.indirect, "N": self.neutral}


@dataclass(frozen=True)
class PrincipleConsensus:
    code: PrincipleCode
    counts: dict[SupportLevel, int]
    weighted_score: Weight  # in [0, 1]


def consensus(matrix: TheorySupportMatrix, weights: ConsensusWeights,
              principle: PrincipleCode) -> PrincipleConsensus:
    """Tally one principle's row and collapse it to a weighted score."""
    counts = {level: 0 for level in SupportLevel}
    for theory in matrix.theories:
        try:
            level = matrix.entries[(principle, theory)]
        except KeyError:
            raise MatrixKeyError(f"unknown principle: {principle}") from None
        counts[level] += 1
    numerator = sum(
        weights.weight(level).scaled * count for level, count in counts.items()
    )
    denominator = weights.direct.scaled * len(matrix.theories)
    score = Weight(div_round_half_up(numerator * SCALE, denominator))
    return PrincipleConsensus(code=principle, counts=counts, weighted_score=score)


def rank_principles(matrix: TheorySupportMatrix,
                    weights: ConsensusWeights) -> list[PrincipleConsensus]:
    """All principles by weighted score, descending; ties in code order."""
    records = [consensus(matrix, weights, code) for code in matrix.principles()]
    records.sort(key=lambda r: (-r.weighted_score.scaled,
                                r.code.family, r.code.number))
    return records


@dataclass(frozen=True)
class TraceEntry:
    tag: QuestionTag
    answer: str
    value: Weight
    principles: tuple[PrincipleConsensus, ...]


@dataclass(frozen=True)
class AuditTrace:
    """Risky answers traced back to principles and their theory consensus."""

    entries: tuple[TraceEntry, ...]
    weights: ConsensusWeights


def trace_audit(fw: FrameworkDefinition, audit: Audit, report: ScoreReport,
                weights: ConsensusWeights | None = None) -> AuditTrace:
    """Trace each positive-value contribution to its principles.

    Questions whose chosen answer contributes nothing are omitted; an
    all-minimum audit yields an empty trace.
    """
    weights = weights or ConsensusWeights.default()
    issues: list[ValidationIssue] = []
    if report.framework_id != fw.id or report.framework_version != fw.version:
        issues.append(ValidationIssue(
            "framework_mismatch", None,
            "report was produced against a different framework"))
    reported = {c.tag: c.answer for c in report.contributions}
    if reported != audit.answers:
        issues.append(ValidationIssue(
            "framework_mismatch", None,
            "report contributions do not match the audit's answers"))
    if issues:
        raise AuditValidationError(issues)

    entries = []
    for contribution in report.contributions:
        if contribution.value.scaled <= 0:
            continue
        question = fw.question_by_tag(contribution.tag)
        records = tuple(
            consensus(fw.matrix, weights, code) for code in question.principle_codes
        )
        entries.append(TraceEntry(
            tag=contribution.tag,
            answer=contribution.answer,
            value=contribution.value,
            principles=records,
        ))
    return AuditTrace(entries=tuple(entries), weights=weights)
