"""Configuration domain types: hierarchy nodes, resolved configs, versions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Any, Iterator

from ..errors import UsageError, VersionError
from ..report import Finding
from .schema import load_schema


class Level(str, Enum):
    PUBLISHER = "publisher"
    IMPRINT = "imprint"
    TITLE = "title"

    @classmethod
    def parse(cls, value: str) -> "Level":
        try:
            return cls(value)
        except ValueError:
            raise UsageError(
                f"unknown hierarchy level {value!r}; expected one of "
                f"{', '.join(m.value for m in cls)}"
            ) from None


#: Resolution precedence, most specific first.
PRECEDENCE: tuple[Level, ...] = (Level.TITLE, Level.IMPRINT, Level.PUBLISHER)


@dataclass(frozen=True)
class ConfigNode:
    """One hierarchy level's configuration document.

    ``sections`` maps section name to the raw section record. Every field is
    optional at non-publisher levels; the resolver enforces required-field
    coverage across the whole hierarchy. Parse-time syntactic findings (for
    example unknown keys) travel with the node.
    """

    level: Level
    sections: dict[str, dict[str, Any]] = field(default_factory=dict)
    findings: tuple[Finding, ...] = ()

    def get(self, path: str) -> Any:
        """Return the value at ``section.field`` or None when absent."""
        section, _, fname = path.partition(".")
        return self.sections.get(section, {}).get(fname)

    def defined_paths(self) -> Iterator[str]:
        for section, body in self.sections.items():
            for fname in body:
                yield f"{section}.{fname}"


@dataclass(frozen=True)
class ResolvedConfig:
    """Fully merged configuration with per-field provenance.

    ``provenance`` records, for each dotted field path, the most specific
    hierarchy level that supplied the value.
    """

    sections: dict[str, dict[str, Any]]
    provenance: dict[str, Level]

    def get(self, path: str, default: Any = None) -> Any:
        section, _, fname = path.partition(".")
        body = self.sections.get(section)
        if body is None or fname not in body:
            return default
        return body[fname]

    def __getitem__(self, path: str) -> Any:
        value = self.get(path, _MISSING)
        if value is _MISSING:
            raise KeyError(path)
        return value

    def defined_paths(self) -> Iterator[str]:
        for section, body in self.sections.items():
            for fname in body:
                yield f"{section}.{fname}"

    def as_node(self, level: Level = Level.PUBLISHER) -> ConfigNode:
        """Re-wrap the resolved values as a single-level node."""
        return ConfigNode(
            level=level,
            sections={name: dict(body) for name, body in self.sections.items()},
        )


_MISSING = object()

_SEMVER_RE = re.compile(r"^(\d+)\.(\d+)(?:\.(\d+))?$")


@total_ordering
@dataclass(frozen=True)
class SemanticVersion:
    """Semantic version with lexicographic ordering on (major, minor, patch)."""

    major: int
    minor: int
    patch: int

    def __post_init__(self):
        if min(self.major, self.minor, self.patch) < 0:
            raise VersionError(f"version components must be non-negative: {self}")

    @classmethod
    def parse(cls, text: str) -> "SemanticVersion":
        """Parse ``major.minor[.patch]``; two-part versions normalize to patch 0."""
        if not isinstance(text, str):
            raise VersionError(f"version must be a string, got {type(text).__name__}")
        m = _SEMVER_RE.match(text.strip())
        if not m:
            raise VersionError(f"not a semantic version: {text!r}")
        major, minor, patch = m.group(1), m.group(2), m.group(3) or "0"
        return cls(int(major), int(minor), int(patch))

    def _key(self) -> tuple[int, int, int]:
        return (self.major, self.minor, self.patch)

    def __lt__(self, other: "SemanticVersion") -> bool:
        return self._key() < other._key()

    def __str__(self) -> str:
        return f"{self.major}.{self.minor}.{self.patch}"


class ChangeKind(str, Enum):
    """What a configuration revision changed, mapped to version components."""

    STRUCTURAL = "structural"
    FEATURE = "feature"
    FIX = "fix"


def bump_version(cfg: ResolvedConfig, change: ChangeKind | str) -> SemanticVersion:
    """Advance the config's semantic version for the given kind of change.

    Structural changes bump major, feature additions bump minor, bug fixes
    bump patch; lower components reset to zero.
    """
    try:
        change = ChangeKind(change)
    except ValueError:
        raise UsageError(f"unknown change kind {change!r}") from None
    current = SemanticVersion.parse(cfg.get("config_metadata.version", ""))
    if change is ChangeKind.STRUCTURAL:
        return SemanticVersion(current.major + 1, 0, 0)
    if change is ChangeKind.FEATURE:
        return SemanticVersion(current.major, current.minor + 1, 0)
    return SemanticVersion(current.major, current.minor, current.patch + 1)


def known_section(name: str) -> bool:
    return name in load_schema()
