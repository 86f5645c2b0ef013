"""Resolving frameworks by id or path, and the shipped example audits."""

from __future__ import annotations

import json
import logging
import os
from importlib import resources
from pathlib import Path

from .builtin import BUILTIN_ID, builtin_ers_v1
from .fileio import DocumentError, audit_from_payload, load_audit, load_framework
from .model import FrameworkDefinition, MODE_LITERAL, lint_errors, lint_framework
from .scoring import Audit

log = logging.getLogger(__name__)

FRAMEWORK_PATH_ENV = "ERS_FRAMEWORK_PATH"

EXAMPLE_AUDIT_NAMES = ("alpha_ltd", "beta_ltd")


class UnknownFrameworkError(KeyError):
    pass


def scan_framework_dir(directory: str | Path) -> dict[str, FrameworkDefinition]:
    """Load every *.json framework in the directory; skip broken ones with a log line."""
    found: dict[str, FrameworkDefinition] = {}
    directory = Path(directory)
    if not directory.is_dir():
        log.warning("framework path %s is not a directory, ignoring", directory)
        return found
    for path in sorted(directory.glob("*.json")):
        try:
            fw = load_framework(path)
        except DocumentError as exc:
            log.warning("skipping framework file %s: %s", path, exc)
            continue
        errors = lint_errors(lint_framework(fw))
        if errors:
            log.warning("skipping framework file %s: %s", path, "; ".join(map(str, errors)))
            continue
        found[fw.id] = fw
    return found


class FrameworkRegistry:
    """Immutable-after-construction set of loadable frameworks."""

    def __init__(self, extra_dir: str | Path | None = None):
        self._frameworks: dict[str, FrameworkDefinition] = {
            BUILTIN_ID: builtin_ers_v1(MODE_LITERAL),
        }
        directory = extra_dir if extra_dir is not None else os.environ.get(FRAMEWORK_PATH_ENV)
        if directory:
            self._frameworks.update(scan_framework_dir(directory))

    def ids(self) -> list[str]:
        return sorted(self._frameworks)

    def get(self, framework_id: str) -> FrameworkDefinition:
        try:
            return self._frameworks[framework_id]
        except KeyError:
            raise UnknownFrameworkError(f"unknown framework {framework_id!r}") from None

    def all(self) -> list[FrameworkDefinition]:
        return [self._frameworks[i] for i in self.ids()]


def resolve_framework(ref: str, registry: FrameworkRegistry | None = None) -> FrameworkDefinition:
    """Resolve a CLI-style reference: a file path if one exists, else a registry id."""
    path = Path(ref)
    if path.is_file():
        fw = load_framework(path)
        errors = lint_errors(lint_framework(fw))
        if errors:
            raise DocumentError(
                f"framework file {ref} failed lint: " + "; ".join(map(str, errors)))
        return fw
    return (registry or FrameworkRegistry()).get(ref)


def load_example_audit(name: str) -> Audit:
    """One of the shipped example audits (alpha_ltd, beta_ltd)."""
    if name not in EXAMPLE_AUDIT_NAMES:
        raise KeyError(f"no shipped example audit {name!r}")
    text = resources.files("ethicalrisk.data").joinpath(f"{name}.json").read_text()
    return audit_from_payload(json.loads(text))


def resolve_audit(ref: str) -> Audit:
    """A file path if one exists, else a shipped example name (basename tolerated)."""
    path = Path(ref)
    if path.is_file():
        return load_audit(path)
    name = path.name.removesuffix(".json")
    if name in EXAMPLE_AUDIT_NAMES:
        return load_example_audit(name)
    raise FileNotFoundError(f"no audit file or shipped example named {ref!r}")
