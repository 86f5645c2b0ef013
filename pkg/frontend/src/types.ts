/**
 * Wire types for the scoring service.
 *
 * Every score, weight, and delta is a decimal string ("0.25", "-2");
 * the service never sends binary floats and the UI never does arithmetic
 * on them beyond geometry for bar widths. Displayed values are always
 * the verbatim strings.
 */

export type Mode = "literal" | "gated";

export interface AnswerOption {
  key: string;
  value: string;
}

export interface Question {
  tag: string;
  text: string;
  options: AnswerOption[];
  gate_answer?: string;
  principles: string[];
  provenance: string;
}

export interface DimensionDef {
  id: string;
  label: string;
  symbol: string;
  formula: string;
}

export interface ModeComputed {
  dimension_max: Record<string, string>;
  max_possible_total: string;
}

export interface FrameworkDoc {
  id: string;
  version: string;
  default_mode: Mode;
  questions: Question[];
  dimensions: DimensionDef[];
  total_formula: string;
  normalization: { target_max: string; method: string };
  principles: { code: string; statement: string }[];
  theory_matrix: { theories: string[]; support: Record<string, string> };
  computed: Record<Mode, ModeComputed>;
}

export interface Contribution {
  tag: string;
  answer: string;
  value: string;
  gate: number | null;
  dimensions: string[];
}

export interface ScoreReport {
  framework: { id: string; version: string };
  mode: Mode;
  subject: Record<string, string>;
  dimensions: Record<string, string>;
  total: string;
  normalized: string;
  max_possible: string;
  contributions: Contribution[];
}

export interface TracePrinciple {
  code: string;
  counts: Record<string, number>;
  weighted_score: string;
}

export interface TraceEntry {
  tag: string;
  answer: string;
  value: string;
  principles: TracePrinciple[];
}

export interface ScoreDocument {
  report: ScoreReport;
  trace: { weights: Record<string, string>; entries: TraceEntry[] };
  notices: string[];
}

export interface WhatIfDocument {
  question: string;
  old_answer: string;
  new_answer: string;
  deltas: { dimensions: Record<string, string>; total: string };
  base: ScoreReport;
  variant: ScoreReport;
}

export interface ValidationIssue {
  kind: string;
  tag: string | null;
  message: string;
}

export interface ValidationResult {
  framework: { id: string; version: string };
  errors: ValidationIssue[];
}

/** The audit file format, shared verbatim with the CLI. */
export interface AuditDoc {
  framework: { id: string; version: string };
  mode?: Mode;
  subject: Record<string, string>;
  answers: Record<string, string>;
  notes?: Record<string, string>;
}
