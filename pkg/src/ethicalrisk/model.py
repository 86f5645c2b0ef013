"""Declarative data model for scoring frameworks.

A FrameworkDefinition bundles everything the engine needs: questions with
weighted answer options, dimension formulas, a total formula, a
normalization rule, the principle catalog, and the principle-by-theory
support matrix. Constructors enforce local structural invariants and
raise; cross-reference problems are reported by lint_framework as
findings so broken files can be diagnosed in one pass.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .fixedpoint import Weight
from .formula import (
    DimRef,
    FormulaExpr,
    GateRef,
    QuestionTag,
    ScoreRef,
    print_formula,
    referenced_symbols,
    walk,
)

MODE_LITERAL = "literal"
MODE_GATED = "gated"
MODES = (MODE_LITERAL, MODE_GATED)

PRINCIPLE_FAMILIES = ("H", "K", "S")


class SupportLevel(enum.Enum):
    """A theory's stance toward a principle."""

    DIRECT = "D"
    CONDITIONAL = "C"
    INDIRECT = "I"
    NEUTRAL = "N"

    @classmethod
    def parse(cls, text: str) -> "SupportLevel":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"support level must be one of D, C, I, N: {text!r}") from None


@dataclass(frozen=True, order=True)
class PrincipleCode:
    """Principle identity such as H1, K3, or S14."""

    family: str
    number: int

    def __post_init__(self) -> None:
        if self.family not in PRINCIPLE_FAMILIES:
            raise ValueError(f"principle family must be H, K, or S: {self.family!r}")
        if self.number < 1:
            raise ValueError(f"principle number must be >= 1: {self.number}")

    @classmethod
    def parse(cls, text: str) -> "PrincipleCode":
        if not text or text[0] not in PRINCIPLE_FAMILIES or not text[1:].isdigit():
            raise ValueError(f"not a principle code: {text!r}")
        return cls(text[0], int(text[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.number}"


@dataclass(frozen=True)
class Principle:
    code: PrincipleCode
    statement: str


@dataclass(frozen=True, eq=False)
class TheorySupportMatrix:
    """Principle x theory grid of support levels."""

    theories: tuple[str, ...]
    entries: dict[tuple[PrincipleCode, str], SupportLevel]

    def principles(self) -> list[PrincipleCode]:
        return sorted({code for code, _ in self.entries})

    def row(self, principle: PrincipleCode) -> dict[str, SupportLevel]:
        return {t: self.entries[(principle, t)] for t in self.theories}


class MatrixKeyError(KeyError):
    """Lookup against a principle or theory the matrix does not contain."""


def support_level(matrix: TheorySupportMatrix, principle: PrincipleCode, theory: str) -> SupportLevel:
    """Return the stored cell for (principle, theory)."""
    if theory not in matrix.theories:
        raise MatrixKeyError(f"unknown theory: {theory!r}")
    try:
        return matrix.entries[(principle, theory)]
    except KeyError:
        raise MatrixKeyError(f"unknown principle: {principle}") from None


@dataclass(frozen=True)
class AnswerOption:
    """One selectable answer and the risk value it contributes."""

    key: str
    value: Weight

    def __post_init__(self) -> None:
        if not self.key:
            raise ValueError("option key must be non-empty")


@dataclass(frozen=True)
class Question:
    tag: QuestionTag
    text: str
    options: tuple[AnswerOption, ...]
    gate_answer: str | None = None
    principle_codes: tuple[PrincipleCode, ...] = ()
    provenance: str = "curated"

    def __post_init__(self) -> None:
        if not self.options:
            raise ValueError(f"question {self.tag} has no options")
        keys = [o.key for o in self.options]
        if len(set(keys)) != len(keys):
            raise ValueError(f"question {self.tag} has duplicate option keys")
        if self.gate_answer is not None and self.gate_answer not in keys:
            raise ValueError(
                f"question {self.tag}: gate answer {self.gate_answer!r} is not an option"
            )
        if self.provenance not in ("paper", "curated"):
            raise ValueError(f"question {self.tag}: unknown provenance {self.provenance!r}")

    def option(self, key: str) -> AnswerOption:
        for opt in self.options:
            if opt.key == key:
                return opt
        raise KeyError(f"question {self.tag} has no option {key!r}")

    def option_keys(self) -> tuple[str, ...]:
        return tuple(o.key for o in self.options)


@dataclass(frozen=True)
class Dimension:
    """One scored aspect with its formula over question values."""

    id: str
    label: str
    symbol: str
    formula: FormulaExpr

    def __post_init__(self) -> None:
        if not (len(self.symbol) == 1 and self.symbol.isupper()):
            raise ValueError(f"dimension symbol must be one uppercase letter: {self.symbol!r}")


@dataclass(frozen=True)
class NormalizationSpec:
    target_max: Weight = Weight.from_int(10)
    method: str = "max_ratio"

    def __post_init__(self) -> None:
        if self.method != "max_ratio":
            raise ValueError(f"unknown normalization method {self.method!r}")
        if self.target_max.scaled <= 0:
            raise ValueError("normalization target_max must be positive")


@dataclass(frozen=True, eq=False)
class FrameworkDefinition:
    """A complete scoring instrument; immutable after load, safe to share.

    The position of a dimension in `dimensions` maps question tags to
    groups: tags with dimension_index i belong to dimensions[i-1].
    """

    id: str
    version: str
    scoring_mode_default: str
    questions: tuple[Question, ...]
    dimensions: tuple[Dimension, ...]
    total_formula: FormulaExpr
    normalization: NormalizationSpec
    principles: tuple[Principle, ...]
    matrix: TheorySupportMatrix

    def __post_init__(self) -> None:
        if self.scoring_mode_default not in MODES:
            raise ValueError(f"unknown scoring mode {self.scoring_mode_default!r}")
        # lookup caches; duplicates are lint findings, last one wins here
        object.__setattr__(self, "_questions_by_tag", {q.tag: q for q in self.questions})
        object.__setattr__(self, "_dimensions_by_symbol", {d.symbol: d for d in self.dimensions})
        object.__setattr__(self, "_principles_by_code", {p.code: p for p in self.principles})

    def question_by_tag(self, tag: QuestionTag) -> Question:
        try:
            return self._questions_by_tag[tag]
        except KeyError:
            raise KeyError(f"no question {tag}") from None

    def dimension_by_symbol(self, symbol: str) -> Dimension:
        try:
            return self._dimensions_by_symbol[symbol]
        except KeyError:
            raise KeyError(f"no dimension with symbol {symbol!r}") from None

    def tags(self) -> tuple[QuestionTag, ...]:
        return tuple(q.tag for q in self.questions)

    def principle_by_code(self, code: PrincipleCode) -> Principle:
        try:
            return self._principles_by_code[code]
        except KeyError:
            raise KeyError(f"no principle {code}") from None


@dataclass(frozen=True)
class LintFinding:
    severity: str  # "error" | "warning"
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.location}: {self.message}"


def lint_framework(fw: FrameworkDefinition) -> list[LintFinding]:
    """Check cross-references and shape; empty list means the framework is sound."""
    findings: list[LintFinding] = []

    def error(location: str, message: str) -> None:
        findings.append(LintFinding("error", location, message))

    def warning(location: str, message: str) -> None:
        findings.append(LintFinding("warning", location, message))

    seen_tags: set[QuestionTag] = set()
    for q in fw.questions:
        if q.tag in seen_tags:
            error(f"question {q.tag}", "duplicate question tag")
        seen_tags.add(q.tag)
        if q.tag.dimension_index > len(fw.dimensions):
            error(f"question {q.tag}",
                  f"dimension index {q.tag.dimension_index} has no declared dimension")
        for opt in q.options:
            if opt.value.scaled < 0:
                error(f"question {q.tag}", f"option {opt.key!r} has negative value")

    symbols = [d.symbol for d in fw.dimensions]
    for sym in symbols:
        if symbols.count(sym) > 1:
            error(f"dimension {sym}", "duplicate dimension symbol")
            break
    ids = [d.id for d in fw.dimensions]
    for did in ids:
        if ids.count(did) > 1:
            error(f"dimension {did}", "duplicate dimension id")
            break

    questions_by_tag = {q.tag: q for q in fw.questions}
    referenced: set[QuestionTag] = set()
    for dim in fw.dimensions:
        location = f"dimension {dim.symbol}"
        for node in walk(dim.formula):
            if isinstance(node, DimRef):
                error(location, f"dimension formula may not reference dimension {node.symbol}")
            elif isinstance(node, (ScoreRef, GateRef)):
                referenced.add(node.tag)
                if node.tag not in questions_by_tag:
                    error(location, f"unresolved question reference {node.tag}")
                elif isinstance(node, GateRef) and questions_by_tag[node.tag].gate_answer is None:
                    error(location,
                          f"gate({node.tag}) references a question with no gate answer")

    for q in fw.questions:
        if q.tag not in referenced:
            warning(f"question {q.tag}", "question never scored by any dimension formula")

    for node in walk(fw.total_formula):
        if isinstance(node, (ScoreRef, GateRef)):
            error("total formula",
                  f"total formula may only reference dimension symbols, found {print_formula(node)}")
    for sym in referenced_symbols(fw.total_formula):
        if sym not in symbols:
            error("total formula", f"unresolved dimension reference {sym}")

    principle_codes = {p.code for p in fw.principles}
    for q in fw.questions:
        for code in q.principle_codes:
            if code not in principle_codes:
                error(f"question {q.tag}", f"unresolved principle code {code}")

    expected_cells = {(p.code, t) for p in fw.principles for t in fw.matrix.theories}
    actual_cells = set(fw.matrix.entries)
    for code, theory in sorted(expected_cells - actual_cells):
        error("theory matrix", f"missing cell ({code}, {theory})")
    for code, theory in sorted(actual_cells - expected_cells):
        error("theory matrix", f"unexpected cell ({code}, {theory})")

    return findings


def lint_errors(findings: Iterable[LintFinding]) -> list[LintFinding]:
    return [f for f in findings if f.severity == "error"]
