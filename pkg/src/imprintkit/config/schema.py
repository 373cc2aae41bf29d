"""Canonical imprint configuration schema.

The 20-section inventory, field types, and required/optional flags live in
``data/schema.json`` so they stay machine-checkable and editable without code
changes. This module loads that file into typed specs used by the parser,
the resolver, and the validator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class FieldSpec:
    """Type and constraint description of one configuration field."""

    name: str
    type: str
    required: bool
    range: tuple[float, float] | None = None
    min: float | None = None
    choices: tuple[str, ...] | None = None
    choices_fold_case: bool = False
    pattern: str | None = None
    semver: bool = False
    item_type: str | None = None
    item_choices: tuple[str, ...] | None = None
    min_items: int | None = None
    ascending: bool = False
    value_type: str | None = None
    value_range: tuple[float, float] | None = None
    value_pattern: str | None = None


@dataclass(frozen=True)
class SectionSpec:
    name: str
    fields: dict[str, FieldSpec] = field(default_factory=dict)


#: Python types accepted for each schema type tag.
TYPE_MAP: dict[str, tuple[type, ...]] = {
    "string": (str,),
    "number": (int, float),
    "integer": (int,),
    "boolean": (bool,),
    "list": (list,),
    "object": (dict,),
}


def _field_spec(name: str, raw: dict) -> FieldSpec:
    def pair(key: str) -> tuple[float, float] | None:
        v = raw.get(key)
        return (float(v[0]), float(v[1])) if v is not None else None

    return FieldSpec(
        name=name,
        type=raw["type"],
        required=bool(raw.get("required", False)),
        range=pair("range"),
        min=raw.get("min"),
        choices=tuple(raw["choices"]) if "choices" in raw else None,
        choices_fold_case=bool(raw.get("choices_fold_case", False)),
        pattern=raw.get("pattern"),
        semver=bool(raw.get("semver", False)),
        item_type=raw.get("item_type"),
        item_choices=tuple(raw["item_choices"]) if "item_choices" in raw else None,
        min_items=raw.get("min_items"),
        ascending=bool(raw.get("ascending", False)),
        value_type=raw.get("value_type"),
        value_range=pair("value_range"),
        value_pattern=raw.get("value_pattern"),
    )


@lru_cache(maxsize=1)
def load_schema() -> dict[str, SectionSpec]:
    """Load the canonical schema, keyed by section name."""
    text = resources.files("imprintkit.config").joinpath("data/schema.json").read_text("utf-8")
    raw = json.loads(text)
    sections: dict[str, SectionSpec] = {}
    for section_name, body in raw["sections"].items():
        fields = {
            fname: _field_spec(fname, fraw) for fname, fraw in body.get("fields", {}).items()
        }
        sections[section_name] = SectionSpec(name=section_name, fields=fields)
    return sections


def section_names() -> frozenset[str]:
    return frozenset(load_schema())


def required_paths() -> list[str]:
    """Dotted ``section.field`` paths that must be defined after resolution."""
    paths = []
    for section in load_schema().values():
        for fspec in section.fields.values():
            if fspec.required:
                paths.append(f"{section.name}.{fspec.name}")
    return paths


def all_paths() -> list[str]:
    paths = []
    for section in load_schema().values():
        for fspec in section.fields.values():
            paths.append(f"{section.name}.{fspec.name}")
    return paths
