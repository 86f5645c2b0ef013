"""Framework-driven ethical risk scoring.

A declarative scoring framework (questions with weighted answers,
dimension formulas in a small arithmetic DSL, a principle catalog, and a
principle-by-theory support matrix) is evaluated against an auditor's
answers with exact fixed-point arithmetic. Ships the ERS v1 framework,
a consensus analyzer, a CLI, and an HTTP scoring service.
"""

from .builtin import BUILTIN_ID, BUILTIN_VERSION, builtin_ers_v1
from .consensus import (
    AuditTrace,
    ConsensusWeights,
    PrincipleConsensus,
    TraceEntry,
    consensus,
    rank_principles,
    trace_audit,
)
from .fileio import (
    DocumentError,
    audit_from_payload,
    audit_to_payload,
    dump_audit,
    dump_framework,
    framework_from_payload,
    framework_to_payload,
    load_audit,
    load_framework,
)
from .fixedpoint import PrecisionError, Weight, WeightError
from .formula import (
    Const,
    DimRef,
    EvaluationError,
    FormulaExpr,
    FormulaParseError,
    GateRef,
    Product,
    QuestionTag,
    ScoreRef,
    Sum,
    ValueEnv,
    evaluate,
    gate_multipliers,
    parse_formula,
    print_formula,
)
from .model import (
    MODE_GATED,
    MODE_LITERAL,
    AnswerOption,
    Dimension,
    FrameworkDefinition,
    LintFinding,
    MatrixKeyError,
    NormalizationSpec,
    Principle,
    PrincipleCode,
    Question,
    SupportLevel,
    TheorySupportMatrix,
    lint_framework,
    support_level,
)
from .registry import (
    FrameworkRegistry,
    load_example_audit,
    resolve_audit,
    resolve_framework,
)
from .scoring import (
    Audit,
    AuditValidationError,
    Contribution,
    DimensionExtrema,
    ExtremaBoundError,
    MaxPossibleTotal,
    ScoreReport,
    ValidationIssue,
    WhatIfDelta,
    dimension_extrema,
    max_possible_total,
    normalize,
    score_audit,
    validate_audit,
    what_if,
)

__all__ = [name for name in dir() if not name.startswith("_")]
