"""Three-level configuration resolution.

Merging is per-field: for every schema field the value is the first one
defined walking title, then imprint, then publisher. List- and object-valued
fields replace wholesale; there is no structural merge inside a field.
"""

from __future__ import annotations

from typing import Any

from ..errors import ContractError, ResolutionError
from .model import PRECEDENCE, ConfigNode, Level, ResolvedConfig
from .schema import load_schema

_MISSING = object()


def resolve(publisher: ConfigNode, imprint: ConfigNode, title: ConfigNode) -> ResolvedConfig:
    """Merge the three hierarchy levels into one fully populated config.

    Raises ResolutionError listing every required field that no level
    defines; provenance records which level supplied each resolved value.
    """
    expected = {Level.PUBLISHER: publisher, Level.IMPRINT: imprint, Level.TITLE: title}
    for level, node in expected.items():
        if node.level is not level:
            raise ContractError(
                f"node for the {level.value} slot carries level tag {node.level.value!r}"
            )

    schema = load_schema()
    sections: dict[str, dict[str, Any]] = {}
    provenance: dict[str, Level] = {}
    missing: list[str] = []

    for section_name, section_spec in schema.items():
        merged: dict[str, Any] = {}
        for fname, fspec in section_spec.fields.items():
            value, source = _first_defined(expected, section_name, fname)
            if value is _MISSING:
                if fspec.required:
                    missing.append(f"{section_name}.{fname}")
                continue
            merged[fname] = value
            provenance[f"{section_name}.{fname}"] = source
        if merged:
            sections[section_name] = merged

    if missing:
        raise ResolutionError(sorted(missing))
    return ResolvedConfig(sections=sections, provenance=provenance)


def _first_defined(
    nodes: dict[Level, ConfigNode], section: str, fname: str
) -> tuple[Any, Level]:
    for level in PRECEDENCE:
        body = nodes[level].sections.get(section)
        if body is not None and fname in body:
            return body[fname], level
    return _MISSING, Level.PUBLISHER
