"""Validation findings and reports, shared by config, codex, and feed checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Layer(str, Enum):
    SYNTACTIC = "syntactic"
    SEMANTIC = "semantic"
    BUSINESS_RULE = "business_rule"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Finding:
    """One validation problem, located by a dotted field path."""

    layer: Layer
    path: str
    message: str
    severity: Severity = Severity.ERROR

    def render(self) -> str:
        """Format as ``LAYER severity path: message`` (the CLI line format)."""
        return f"{self.layer.value.upper()} {self.severity.value} {self.path}: {self.message}"

    def to_dict(self) -> dict:
        return {
            "layer": self.layer.value,
            "path": self.path,
            "message": self.message,
            "severity": self.severity.value,
        }


@dataclass
class ValidationReport:
    """Outcome of a multi-layer validation pass.

    ``passed`` is true exactly when no finding has error severity.
    """

    findings: list[Finding] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(f.severity is Severity.ERROR for f in self.findings)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity is Severity.ERROR]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity is Severity.WARNING]

    def extend(self, findings: list[Finding]) -> None:
        self.findings.extend(findings)

    def render_lines(self) -> list[str]:
        return [f.render() for f in self.findings]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "findings": [f.to_dict() for f in self.findings],
        }
