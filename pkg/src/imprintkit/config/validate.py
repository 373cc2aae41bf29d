"""Multi-layer validation of resolved configurations.

Three layers run in order — syntactic (types and shape), semantic (value
constraints), business rules (cross-field policy) — and later layers always
run even when earlier layers found errors. All problems are findings, never
exceptions.

Business rules ship as data (``data/business_rules.json``) so imprints can
add rules without code changes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from ..report import Finding, Layer, Severity, ValidationReport
from .model import ResolvedConfig, SemanticVersion
from .schema import TYPE_MAP, FieldSpec, load_schema
from ..errors import VersionError


@dataclass(frozen=True)
class BusinessRule:
    """One data-defined cross-field check."""

    id: str
    kind: str
    field: str
    reference: str
    message: str
    description: str = ""
    markers: dict[str, tuple[str, ...]] = None  # type: ignore[assignment]
    severity: Severity = Severity.ERROR


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[BusinessRule, ...] = ()


def _rule_from_dict(raw: dict) -> BusinessRule:
    markers = raw.get("markers")
    return BusinessRule(
        id=raw["id"],
        kind=raw["kind"],
        field=raw["field"],
        reference=raw.get("reference", ""),
        message=raw["message"],
        description=raw.get("description", ""),
        markers={k: tuple(v) for k, v in markers.items()} if markers else None,
        severity=Severity(raw.get("severity", "error")),
    )


@lru_cache(maxsize=1)
def default_rules() -> RuleSet:
    text = resources.files("imprintkit.config").joinpath("data/business_rules.json").read_text(
        "utf-8"
    )
    return load_rules_text(text)


def load_rules_text(text: str) -> RuleSet:
    raw = json.loads(text)
    return RuleSet(rules=tuple(_rule_from_dict(r) for r in raw.get("rules", [])))


def load_rules_file(path: str | Path) -> RuleSet:
    return load_rules_text(Path(path).read_text("utf-8"))


def validate(cfg: ResolvedConfig, rules: RuleSet | None = None) -> ValidationReport:
    """Run all three validation layers over a resolved config."""
    rules = rules if rules is not None else default_rules()
    report = ValidationReport()
    type_ok = _syntactic_layer(cfg, report)
    _semantic_layer(cfg, report, type_ok)
    _business_layer(cfg, report, rules)
    return report


# --- layer 1: types and shape ---------------------------------------------


def _syntactic_layer(cfg: ResolvedConfig, report: ValidationReport) -> set[str]:
    """Check every defined field against its schema type. Returns paths that
    typed correctly so later layers can skip fields with broken shapes."""
    schema = load_schema()
    ok: set[str] = set()
    for section_name, body in cfg.sections.items():
        spec = schema.get(section_name)
        if spec is None:
            report.findings.append(
                Finding(Layer.SYNTACTIC, section_name, f"unknown section {section_name!r}")
            )
            continue
        for fname, value in body.items():
            path = f"{section_name}.{fname}"
            fspec = spec.fields.get(fname)
            if fspec is None:
                report.findings.append(
                    Finding(Layer.SYNTACTIC, path, f"unknown field {fname!r}")
                )
                continue
            problem = _type_problem(fspec, value)
            if problem:
                report.findings.append(Finding(Layer.SYNTACTIC, path, problem))
            else:
                ok.add(path)
    return ok


def _type_problem(fspec: FieldSpec, value: Any) -> str | None:
    expected = TYPE_MAP[fspec.type]
    if isinstance(value, bool) and fspec.type in ("number", "integer"):
        return f"expected {fspec.type}, got boolean"
    if not isinstance(value, expected):
        return f"expected {fspec.type}, got {type(value).__name__}"
    if fspec.type == "list" and fspec.item_type:
        item_expected = TYPE_MAP[fspec.item_type]
        for i, item in enumerate(value):
            if isinstance(item, bool) and fspec.item_type in ("number", "integer"):
                return f"item {i} expected {fspec.item_type}, got boolean"
            if not isinstance(item, item_expected):
                return f"item {i} expected {fspec.item_type}, got {type(item).__name__}"
    if fspec.type == "object" and fspec.value_type:
        value_expected = TYPE_MAP[fspec.value_type]
        for key, v in value.items():
            if isinstance(v, bool) and fspec.value_type in ("number", "integer"):
                return f"value for {key!r} expected {fspec.value_type}, got boolean"
            if not isinstance(v, value_expected):
                return f"value for {key!r} expected {fspec.value_type}, got {type(v).__name__}"
    return None


# --- layer 2: value constraints --------------------------------------------


def _semantic_layer(cfg: ResolvedConfig, report: ValidationReport, type_ok: set[str]) -> None:
    schema = load_schema()
    for section_name, body in cfg.sections.items():
        spec = schema.get(section_name)
        if spec is None:
            continue
        for fname, value in body.items():
            path = f"{section_name}.{fname}"
            fspec = spec.fields.get(fname)
            if fspec is None or path not in type_ok:
                continue  # shape already reported; constraints would misfire
            report.extend(_constraint_findings(fspec, path, value))


def _constraint_findings(fspec: FieldSpec, path: str, value: Any) -> list[Finding]:
    out: list[Finding] = []

    def err(sub_path: str, message: str) -> None:
        out.append(Finding(Layer.SEMANTIC, sub_path, message))

    if fspec.range is not None:
        lo, hi = fspec.range
        if not (lo <= value <= hi):
            err(path, f"value {value} out of range [{_fmt(lo)},{_fmt(hi)}]")
    if fspec.min is not None and value < fspec.min:
        err(path, f"value {value} below minimum {_fmt(fspec.min)}")
    if fspec.choices is not None:
        candidate = value.lower() if fspec.choices_fold_case else value
        if candidate not in fspec.choices:
            err(path, f"value {value!r} not one of {list(fspec.choices)}")
    if fspec.pattern is not None and not re.match(fspec.pattern, value):
        err(path, f"value {value!r} does not match pattern {fspec.pattern}")
    if fspec.semver:
        try:
            SemanticVersion.parse(value)
        except VersionError as exc:
            err(path, str(exc))
    if fspec.min_items is not None and len(value) < fspec.min_items:
        err(path, f"needs at least {fspec.min_items} item(s), has {len(value)}")
    if fspec.item_choices is not None:
        for i, item in enumerate(value):
            if item not in fspec.item_choices:
                err(f"{path}[{i}]", f"value {item!r} not one of {list(fspec.item_choices)}")
    if fspec.ascending and list(value) != sorted(value):
        err(path, f"values must be ascending, got {value}")
    if fspec.value_range is not None:
        lo, hi = fspec.value_range
        for key in value:
            v = value[key]
            if not (lo <= v <= hi):
                err(f"{path}.{key}", f"value {v} out of range [{_fmt(lo)},{_fmt(hi)}]")
    if fspec.value_pattern is not None:
        for key, v in value.items():
            if not isinstance(v, str) or not re.match(fspec.value_pattern, v):
                err(f"{path}.{key}", f"value {v!r} does not match pattern {fspec.value_pattern}")
    return out


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else str(x)


# --- layer 3: business rules ------------------------------------------------


def _business_layer(cfg: ResolvedConfig, report: ValidationReport, rules: RuleSet) -> None:
    for rule in rules.rules:
        finding = _apply_rule(cfg, rule)
        if finding:
            report.findings.append(finding)


def _apply_rule(cfg: ResolvedConfig, rule: BusinessRule) -> Finding | None:
    value = cfg.get(rule.field)
    reference = cfg.get(rule.reference)
    if not isinstance(value, str) or not isinstance(reference, str):
        return None  # shape problems belong to earlier layers

    if rule.kind == "marker_consistency":
        matched = _matched_markers(reference, rule.markers or {})
        if matched and value not in matched:
            return _rule_finding(rule, value, reference)
        return None
    if rule.kind == "substring_presence":
        if value.lower() not in reference.lower():
            return _rule_finding(rule, value, reference)
        return None
    return Finding(
        Layer.BUSINESS_RULE,
        rule.field,
        f"rule {rule.id!r} has unknown kind {rule.kind!r}",
        severity=Severity.WARNING,
    )


def _matched_markers(reference: str, markers: dict[str, tuple[str, ...]]) -> set[str]:
    folded = reference.lower()
    return {
        key
        for key, needles in markers.items()
        if any(needle.lower() in folded for needle in needles)
    }


def _rule_finding(rule: BusinessRule, value: str, reference: str) -> Finding:
    message = rule.message.format(value=value, reference_value=reference)
    return Finding(Layer.BUSINESS_RULE, rule.field, message, severity=rule.severity)


def binding_matches_rendition(binding: str, rendition: str) -> bool:
    """True when the rendition string is consistent with the binding type.

    Uses the marker table from the shipped business rules so the feed
    validator and the config validator agree on one source of truth.
    """
    for rule in default_rules().rules:
        if rule.kind == "marker_consistency" and rule.markers:
            matched = _matched_markers(rendition, rule.markers)
            if matched and binding not in matched:
                return False
    return True
