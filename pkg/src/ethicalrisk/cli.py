"""Command-line interface.

Exit codes: 0 success, 1 validation failure (or lint errors), 2 usage
error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .consensus import ConsensusWeights, rank_principles, trace_audit
from .fileio import DocumentError, dump_framework
from .fixedpoint import WeightError
from .formula import QuestionTag, print_formula
from .model import MODES, FrameworkDefinition, SupportLevel, lint_errors, lint_framework
from .registry import UnknownFrameworkError, resolve_audit, resolve_framework
from .render import (
    document_bytes,
    render_human,
    render_machine,
    render_whatif_human,
    shipped_example_notices,
    whatif_document,
)
from .scoring import (
    AuditValidationError,
    ExtremaBoundError,
    dimension_extrema,
    max_possible_total,
    score_audit,
    validate_audit,
    what_if,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INTERNAL):
        self.code = code
        super().__init__(message)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        config = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_USAGE) from exc
    if not isinstance(config, dict):
        raise CliError(f"config {path} must be a JSON object", EXIT_USAGE)
    return config


def _framework(args: argparse.Namespace) -> FrameworkDefinition:
    try:
        return resolve_framework(args.framework)
    except (UnknownFrameworkError, DocumentError, FileNotFoundError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _audit(args: argparse.Namespace):
    try:
        return resolve_audit(args.audit)
    except (FileNotFoundError, DocumentError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _weights(args: argparse.Namespace, config: dict) -> ConsensusWeights:
    spec = getattr(args, "weights", None)
    try:
        if spec:
            return ConsensusWeights.parse(spec)
        if "weights" in config:
            raw = config["weights"]
            if not isinstance(raw, dict):
                raise ValueError("config weights must be an object")
            spec_text = ",".join(f"{k}={v}" for k, v in raw.items())
            return ConsensusWeights.parse(spec_text)
        return ConsensusWeights.default()
    except (WeightError, ValueError) as exc:
        raise CliError(f"bad consensus weights: {exc}", EXIT_USAGE) from exc


def _mode(args: argparse.Namespace, config: dict) -> str | None:
    mode = getattr(args, "mode", None) or config.get("mode")
    if mode is not None and mode not in MODES:
        raise CliError(f"mode must be one of {MODES}", EXIT_USAGE)
    return mode


def _emit(out_path: str | None, body: bytes) -> None:
    if out_path:
        Path(out_path).write_bytes(body)
    else:
        sys.stdout.buffer.write(body)
        sys.stdout.buffer.flush()


def cmd_score(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    fw = _framework(args)
    audit = _audit(args)
    weights = _weights(args, config)
    mode = _mode(args, config)
    try:
        report = score_audit(fw, audit, mode)
    except AuditValidationError as exc:
        for issue in exc.issues:
            print(issue, file=sys.stderr)
        return EXIT_VALIDATION
    trace = trace_audit(fw, audit, report, weights)
    notices = shipped_example_notices(fw, audit)
    if args.format == "machine":
        _emit(args.out, render_machine(report, trace, notices).body)
        return EXIT_OK
    secondary = None
    if mode is None:
        other = "gated" if report.mode == "literal" else "literal"
        secondary = score_audit(fw, audit, other)
    _emit(args.out, render_human(fw, report, trace, notices, secondary).body)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    fw = _framework(args)
    audit = _audit(args)
    issues = validate_audit(fw, audit)
    if not issues:
        print(f"audit is complete and valid against {fw.id} {fw.version}")
        return EXIT_OK
    for issue in issues:
        print(issue)
    return EXIT_VALIDATION


def cmd_whatif(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    fw = _framework(args)
    audit = _audit(args)
    mode = _mode(args, config)
    try:
        tag = QuestionTag.parse(args.question)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    try:
        delta = what_if(fw, audit, tag, args.answer, mode)
    except AuditValidationError as exc:
        for issue in exc.issues:
            print(issue, file=sys.stderr)
        return EXIT_VALIDATION
    if args.format == "machine":
        _emit(args.out, document_bytes(whatif_document(delta)))
    else:
        _emit(args.out, render_whatif_human(fw, delta).encode("utf-8"))
    return EXIT_OK


def cmd_framework(args: argparse.Namespace) -> int:
    fw = _framework(args)
    if args.action == "export":
        _emit(args.out, dump_framework(fw).encode("utf-8"))
        return EXIT_OK
    if args.action == "lint":
        findings = lint_framework(fw)
        if not findings:
            print(f"{fw.id} {fw.version}: no findings")
            return EXIT_OK
        for finding in findings:
            print(finding)
        return EXIT_VALIDATION if lint_errors(findings) else EXIT_OK
    # show
    print(f"{fw.id} {fw.version} (default mode: {fw.scoring_mode_default})")
    print(f"questions: {len(fw.questions)}  principles: {len(fw.principles)}  "
          f"theories: {len(fw.matrix.theories)}")
    for dim in fw.dimensions:
        print(f"  {dim.symbol}  {dim.label}: {print_formula(dim.formula)}")
    print(f"  total: {print_formula(fw.total_formula)}")
    return EXIT_OK


def cmd_consensus(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    fw = _framework(args)
    weights = _weights(args, config)
    records = rank_principles(fw.matrix, weights)
    if args.principle:
        records = [r for r in records if str(r.code) == args.principle]
        if not records:
            raise CliError(f"unknown principle {args.principle!r}", EXIT_USAGE)
    weights_text = ", ".join(f"{k}={v}" for k, v in weights.as_mapping().items())
    print(f"consensus weights: {weights_text}")
    for record in records:
        counts = " ".join(f"{lvl.value}{record.counts[lvl]}" for lvl in SupportLevel)
        print(f"  {str(record.code):<4} {str(record.weighted_score):<8} ({counts})")
    return EXIT_OK


def cmd_extrema(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    fw = _framework(args)
    mode = _mode(args, config)
    try:
        for dim in fw.dimensions:
            extrema = dimension_extrema(fw, dim, mode)
            print(f"  {dim.symbol}  min={extrema.minimum}  max={extrema.maximum}")
        total = max_possible_total(fw, mode)
        print(f"  max possible total: {total.value} (path: {total.path})")
    except ExtremaBoundError as exc:
        raise CliError(str(exc), EXIT_INTERNAL) from exc
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    serve(port=args.port, bind=args.bind)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ers",
        description="Ethical risk scoring: frameworks, audits, consensus, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, audit: bool = True) -> None:
        p.add_argument("--framework", required=True,
                       help="framework id (e.g. ers-v1) or path to a definition file")
        if audit:
            p.add_argument("--audit", required=True,
                           help="audit file path or shipped example name (alpha_ltd, beta_ltd)")
        p.add_argument("--config", help="JSON config with default mode/weights")

    p = sub.add_parser("score", help="score an audit")
    add_common(p)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--format", choices=("machine", "human"), default="human")
    p.add_argument("--weights", help="consensus weights, e.g. D=1,C=0.5,I=0.25,N=0")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("validate", help="list missing or invalid answers")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("whatif", help="effect of flipping one answer")
    add_common(p)
    p.add_argument("--question", required=True)
    p.add_argument("--answer", required=True)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--format", choices=("machine", "human"), default="human")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("framework", help="inspect, lint, or export a framework")
    p.add_argument("action", choices=("show", "lint", "export"))
    p.add_argument("framework", help="framework id or path")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.set_defaults(func=cmd_framework, config=None)

    p = sub.add_parser("consensus", help="theory-consensus ranking of principles")
    p.add_argument("--framework", default="ers-v1")
    p.add_argument("--principle", help="restrict to one principle code, e.g. H1")
    p.add_argument("--weights", help="consensus weights, e.g. D=1,C=0.5,I=0.25,N=0")
    p.add_argument("--config", help="JSON config with default mode/weights")
    p.set_defaults(func=cmd_consensus)

    p = sub.add_parser("extrema", help="per-dimension extrema and max possible total")
    p.add_argument("--framework", required=True)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--config", help="JSON config with default mode/weights")
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("serve", help="run the HTTP scoring service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except Exception as exc:  # unexpected: report and exit 3, never traceback-spam
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
