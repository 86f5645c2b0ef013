"""Scoring engine: audits in, exact score reports out.

Scoring is a pure function of (framework, audit, mode). All arithmetic is
exact fixed point; the single place that rounds is normalization, half-up
onto the millionths grid. Extrema and the maximum possible total are
found by exhaustive enumeration, never by heuristics.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field, replace

from .fixedpoint import Weight, div_round_half_up
from .formula import (
    FormulaExpr,
    QuestionTag,
    ValueEnv,
    evaluate,
    gate_multipliers,
    referenced_tags,
)
from .model import MODE_GATED, MODE_LITERAL, MODES, Dimension, FrameworkDefinition

EXHAUSTIVE_QUESTION_BOUND = 20


@dataclass(frozen=True)
class Audit:
    """One auditor's answers against a framework, plus subject metadata.

    Partial answer maps are representable (the questionnaire UI keeps
    drafts) but scoring requires an answer for every question.
    """

    framework_id: str
    framework_version: str
    answers: dict[QuestionTag, str]
    subject: dict[str, str] = field(default_factory=dict)
    mode: str | None = None
    notes: dict[QuestionTag, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode is not None and self.mode not in MODES:
            raise ValueError(f"unknown scoring mode {self.mode!r}")

    def with_answer(self, tag: QuestionTag, answer: str) -> "Audit":
        answers = dict(self.answers)
        answers[tag] = answer
        return replace(self, answers=answers)


@dataclass(frozen=True)
class ValidationIssue:
    kind: str  # framework_mismatch | missing_answer | unknown_question | unknown_option
    tag: QuestionTag | None
    message: str

    def __str__(self) -> str:
        return self.message


class AuditValidationError(ValueError):
    """Raised by scoring when an audit is not scoreable; carries every issue."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


class ExtremaBoundError(ValueError):
    """Too many questions for exhaustive enumeration."""


class DegenerateFrameworkError(ValueError):
    """Maximum possible total is zero; normalization is undefined."""


def validate_audit(fw: FrameworkDefinition, audit: Audit) -> list[ValidationIssue]:
    """Collect every validation failure, not just the first."""
    issues: list[ValidationIssue] = []
    if audit.framework_id != fw.id:
        issues.append(ValidationIssue(
            "framework_mismatch", None,
            f"audit references framework {audit.framework_id!r}, expected {fw.id!r}"))
    if audit.framework_version != fw.version:
        issues.append(ValidationIssue(
            "framework_mismatch", None,
            f"audit references framework version {audit.framework_version!r}, "
            f"expected {fw.version!r}"))
    known = {q.tag: q for q in fw.questions}
    for q in fw.questions:
        if q.tag not in audit.answers:
            issues.append(ValidationIssue(
                "missing_answer", q.tag, f"no answer for question {q.tag}"))
    for tag in sorted(audit.answers):
        question = known.get(tag)
        if question is None:
            issues.append(ValidationIssue(
                "unknown_question", tag, f"answer for unknown question {tag}"))
        elif audit.answers[tag] not in question.option_keys():
            issues.append(ValidationIssue(
                "unknown_option", tag,
                f"question {tag} has no option {audit.answers[tag]!r} "
                f"(expected one of {', '.join(question.option_keys())})"))
    return issues


def effective_mode(fw: FrameworkDefinition, audit: Audit | None = None,
                   override: str | None = None) -> str:
    if override is not None:
        return override
    if audit is not None and audit.mode is not None:
        return audit.mode
    return fw.scoring_mode_default


def gateable_tags(fw: FrameworkDefinition) -> set[QuestionTag]:
    return {q.tag for q in fw.questions if q.gate_answer is not None}


def effective_formula(fw: FrameworkDefinition, dim: Dimension, mode: str) -> FormulaExpr:
    """The dimension formula actually evaluated under the given mode."""
    if mode == MODE_LITERAL:
        return dim.formula
    if mode == MODE_GATED:
        return gate_multipliers(dim.formula, gateable_tags(fw))
    raise ValueError(f"unknown scoring mode {mode!r}")


_plan_cache: "weakref.WeakKeyDictionary[FrameworkDefinition, dict]" = weakref.WeakKeyDictionary()


def _mode_plan(fw: FrameworkDefinition, mode: str) -> list[tuple[Dimension, FormulaExpr, list[QuestionTag]]]:
    """Per-mode (dimension, effective formula, referenced tags), cached per framework."""
    plans = _plan_cache.setdefault(fw, {})
    if mode not in plans:
        plan = []
        for dim in fw.dimensions:
            expr = effective_formula(fw, dim, mode)
            plan.append((dim, expr, sorted(referenced_tags(expr))))
        plans[mode] = plan
    return plans[mode]


def _env_for_answers(fw: FrameworkDefinition, answers: dict[QuestionTag, str],
                     dim_values: dict[str, Weight] | None = None) -> ValueEnv:
    score_values: dict[QuestionTag, Weight] = {}
    gate_values: dict[QuestionTag, int] = {}
    for tag, answer in answers.items():
        question = fw.question_by_tag(tag)
        score_values[tag] = question.option(answer).value
        if question.gate_answer is not None:
            gate_values[tag] = 1 if answer == question.gate_answer else 0
    return ValueEnv(score_values, gate_values, dim_values if dim_values is not None else {})


@dataclass(frozen=True)
class Contribution:
    """What one answered question fed into the evaluation."""

    tag: QuestionTag
    answer: str
    value: Weight
    gate: int | None  # present only in gated mode for gate-declaring questions
    dimensions: tuple[str, ...]


@dataclass(frozen=True)
class ScoreReport:
    framework_id: str
    framework_version: str
    mode: str
    subject: dict[str, str]
    dimension_scores: dict[str, Weight]
    total: Weight
    normalized: Weight
    max_possible: Weight
    contributions: tuple[Contribution, ...]


def score_audit(fw: FrameworkDefinition, audit: Audit,
                mode: str | None = None) -> ScoreReport:
    """Evaluate every dimension, the total, and the normalized score.

    Raises AuditValidationError carrying the full issue list when the
    audit is partial or inconsistent with the framework.
    """
    issues = validate_audit(fw, audit)
    if issues:
        raise AuditValidationError(issues)
    used_mode = effective_mode(fw, audit, mode)

    env = _env_for_answers(fw, audit.answers)
    dim_values: dict[str, Weight] = {}
    touched: dict[QuestionTag, list[str]] = {tag: [] for tag in audit.answers}
    for dim, expr, tags in _mode_plan(fw, used_mode):
        dim_values[dim.symbol] = evaluate(expr, env)
        for tag in tags:
            touched[tag].append(dim.symbol)

    total = evaluate(fw.total_formula, ValueEnv({}, {}, dim_values))
    maximum = max_possible_total(fw, used_mode).value
    normalized = _normalize_against(total, maximum, fw.normalization.target_max)

    contributions = []
    for question in fw.questions:
        answer = audit.answers[question.tag]
        gate: int | None = None
        if used_mode == MODE_GATED and question.gate_answer is not None:
            gate = 1 if answer == question.gate_answer else 0
        contributions.append(Contribution(
            tag=question.tag,
            answer=answer,
            value=question.option(answer).value,
            gate=gate,
            dimensions=tuple(touched[question.tag]),
        ))

    return ScoreReport(
        framework_id=fw.id,
        framework_version=fw.version,
        mode=used_mode,
        subject=dict(audit.subject),
        dimension_scores=dim_values,
        total=total,
        normalized=normalized,
        max_possible=maximum,
        contributions=tuple(contributions),
    )


def _normalize_against(total: Weight, maximum: Weight, target_max: Weight) -> Weight:
    if maximum.scaled == 0:
        raise DegenerateFrameworkError(
            "maximum possible total is zero; normalized score is undefined")
    scaled = div_round_half_up(total.scaled * target_max.scaled, maximum.scaled)
    return Weight(scaled)


def normalize(total: Weight, fw: FrameworkDefinition, mode: str | None = None) -> Weight:
    """total * target_max / max_possible, rounded half-up onto the grid."""
    used_mode = effective_mode(fw, override=mode)
    maximum = max_possible_total(fw, used_mode).value
    return _normalize_against(total, maximum, fw.normalization.target_max)


@dataclass(frozen=True)
class DimensionExtrema:
    minimum: Weight
    maximum: Weight
    argmax: dict[QuestionTag, str]


def _enumerate_options(fw: FrameworkDefinition, tags: list[QuestionTag]):
    """All option-key combinations for the tags, lexicographic by declared order."""
    option_lists = [fw.question_by_tag(t).option_keys() for t in tags]
    return itertools.product(*option_lists)


def dimension_extrema(fw: FrameworkDefinition, dim: Dimension,
                      mode: str | None = None) -> DimensionExtrema:
    """Exact (min, max) by brute force over this dimension's questions only.

    The argmax witness is the lexicographically smallest assignment (by
    question tag, then declared option order) that attains the maximum.
    """
    used_mode = effective_mode(fw, override=mode)
    expr = effective_formula(fw, dim, used_mode)
    tags = sorted(referenced_tags(expr))
    if len(tags) > EXHAUSTIVE_QUESTION_BOUND:
        raise ExtremaBoundError(
            f"dimension {dim.symbol} references {len(tags)} questions, "
            f"too large for exhaustive extrema (bound {EXHAUSTIVE_QUESTION_BOUND})")
    minimum: Weight | None = None
    maximum: Weight | None = None
    argmax: dict[QuestionTag, str] = {}
    for combo in _enumerate_options(fw, tags):
        assignment = dict(zip(tags, combo))
        value = evaluate(expr, _env_for_answers(fw, assignment))
        if minimum is None or value < minimum:
            minimum = value
        if maximum is None or value > maximum:
            maximum = value
            argmax = assignment
    assert minimum is not None and maximum is not None
    return DimensionExtrema(minimum, maximum, argmax)


@dataclass(frozen=True)
class MaxPossibleTotal:
    value: Weight
    path: str  # "per_dimension" | "exhaustive_union"
    witness: dict[QuestionTag, str]


_max_total_cache: "weakref.WeakKeyDictionary[FrameworkDefinition, dict[str, MaxPossibleTotal]]" = (
    weakref.WeakKeyDictionary()
)


def max_possible_total(fw: FrameworkDefinition, mode: str | None = None) -> MaxPossibleTotal:
    """Exact maximum of the total formula over every complete answer set.

    When no question is shared between dimensions the per-dimension maxima
    are simultaneously attainable and the total formula (monotone by
    grammar) is evaluated at them. With shared questions the maximum over
    the union is computed exactly by enumerating shared assignments and
    maximizing each dimension over its private questions, which is
    equivalent to enumerating all union assignments.
    """
    used_mode = effective_mode(fw, override=mode)
    per_fw = _max_total_cache.setdefault(fw, {})
    if used_mode in per_fw:
        return per_fw[used_mode]

    exprs = {dim.symbol: effective_formula(fw, dim, used_mode) for dim in fw.dimensions}
    tag_sets = {sym: referenced_tags(e) for sym, e in exprs.items()}
    for dim in fw.dimensions:
        if len(tag_sets[dim.symbol]) > EXHAUSTIVE_QUESTION_BOUND:
            raise ExtremaBoundError(
                f"dimension {dim.symbol} references {len(tag_sets[dim.symbol])} questions, "
                f"too large for exhaustive extrema (bound {EXHAUSTIVE_QUESTION_BOUND})")

    counts: dict[QuestionTag, int] = {}
    for tags in tag_sets.values():
        for tag in tags:
            counts[tag] = counts.get(tag, 0) + 1
    shared = sorted(tag for tag, n in counts.items() if n > 1)
    if len(shared) > EXHAUSTIVE_QUESTION_BOUND:
        raise ExtremaBoundError(
            f"{len(shared)} questions shared between dimensions, "
            f"too large for exhaustive extrema (bound {EXHAUSTIVE_QUESTION_BOUND})")

    witness: dict[QuestionTag, str] = {
        q.tag: q.options[0].key for q in fw.questions  # filler for unreferenced questions
    }

    if not shared:
        for dim in fw.dimensions:
            extrema = dimension_extrema(fw, dim, used_mode)
            witness.update(extrema.argmax)
        result = MaxPossibleTotal(
            value=_total_at(fw, witness, exprs),
            path="per_dimension",
            witness=witness,
        )
        per_fw[used_mode] = result
        return result

    best_value: Weight | None = None
    best_assignment: dict[QuestionTag, str] = {}
    private = {sym: sorted(tag_sets[sym] - set(shared)) for sym in exprs}
    for combo in _enumerate_options(fw, shared):
        shared_assignment = dict(zip(shared, combo))
        candidate = dict(shared_assignment)
        dim_values: dict[str, Weight] = {}
        for dim in fw.dimensions:
            sym = dim.symbol
            best_dim: Weight | None = None
            best_private: dict[QuestionTag, str] = {}
            for private_combo in _enumerate_options(fw, private[sym]):
                assignment = dict(shared_assignment)
                assignment.update(zip(private[sym], private_combo))
                value = evaluate(exprs[sym], _env_for_answers(fw, assignment))
                if best_dim is None or value > best_dim:
                    best_dim = value
                    best_private = dict(zip(private[sym], private_combo))
            assert best_dim is not None
            dim_values[sym] = best_dim
            candidate.update(best_private)
        total = evaluate(fw.total_formula, ValueEnv({}, {}, dim_values))
        if best_value is None or total > best_value:
            best_value = total
            best_assignment = candidate
    assert best_value is not None
    witness.update(best_assignment)
    result = MaxPossibleTotal(value=best_value, path="exhaustive_union", witness=witness)
    per_fw[used_mode] = result
    return result


def _total_at(fw: FrameworkDefinition, assignment: dict[QuestionTag, str],
              exprs: dict[str, FormulaExpr]) -> Weight:
    env = _env_for_answers(fw, assignment)
    dim_values = {sym: evaluate(expr, env) for sym, expr in exprs.items()}
    return evaluate(fw.total_formula, ValueEnv({}, {}, dim_values))


@dataclass(frozen=True)
class WhatIfDelta:
    """Effect of flipping one answer, computed by full re-scoring."""

    question: QuestionTag
    old_answer: str
    new_answer: str
    base: ScoreReport
    variant: ScoreReport
    dimension_deltas: dict[str, int]  # signed millionths
    total_delta: int  # signed millionths


def what_if(fw: FrameworkDefinition, audit: Audit, question: QuestionTag,
            new_answer: str, mode: str | None = None) -> WhatIfDelta:
    """Score the audit with one answer flipped; the base audit is untouched."""
    flip_issues: list[ValidationIssue] = []
    try:
        target = fw.question_by_tag(question)
    except KeyError:
        flip_issues.append(ValidationIssue(
            "unknown_question", question, f"what-if flips unknown question {question}"))
    else:
        if new_answer not in target.option_keys():
            flip_issues.append(ValidationIssue(
                "unknown_option", question,
                f"question {question} has no option {new_answer!r} "
                f"(expected one of {', '.join(target.option_keys())})"))
    issues = validate_audit(fw, audit) + flip_issues
    if issues:
        raise AuditValidationError(issues)
    base = score_audit(fw, audit, mode)
    old_answer = audit.answers[question]
    variant = score_audit(fw, audit.with_answer(question, new_answer), mode)
    deltas = {
        sym: variant.dimension_scores[sym].scaled - base.dimension_scores[sym].scaled
        for sym in base.dimension_scores
    }
    return WhatIfDelta(
        question=question,
        old_answer=old_answer,
        new_answer=new_answer,
        base=base,
        variant=variant,
        dimension_deltas=deltas,
        total_delta=variant.total.scaled - base.total.scaled,
    )
