"""Parsing and serialization of configuration documents.

Config files are UTF-8 JSON, one file per hierarchy level. Section and field
names are checked against the closed schema at parse time; unknown keys
become syntactic findings attached to the returned node.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import ConfigParseError
from ..report import Finding, Layer, Severity
from .model import ConfigNode, Level
from .schema import load_schema


def parse_config(raw: str, level: Level | str) -> ConfigNode:
    """Parse one level's JSON document into a ConfigNode.

    Unknown top-level sections and unknown fields inside known sections are
    reported as syntactic error findings on the node rather than raised, so
    a caller can surface every problem at once.
    """
    if isinstance(level, str):
        level = Level.parse(level)
    try:
        document = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f"malformed config document: {exc.msg} at line {exc.lineno} column {exc.colno}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(document, dict):
        raise ConfigParseError(
            f"config document must be a JSON object, got {type(document).__name__}"
        )

    schema = load_schema()
    sections: dict[str, dict[str, Any]] = {}
    findings: list[Finding] = []
    for name, body in document.items():
        spec = schema.get(name)
        if spec is None:
            findings.append(
                Finding(
                    layer=Layer.SYNTACTIC,
                    path=name,
                    message=f"unknown section {name!r}",
                    severity=Severity.ERROR,
                )
            )
            continue
        if not isinstance(body, dict):
            findings.append(
                Finding(
                    layer=Layer.SYNTACTIC,
                    path=name,
                    message=f"section {name!r} must be an object, got {type(body).__name__}",
                    severity=Severity.ERROR,
                )
            )
            continue
        kept: dict[str, Any] = {}
        for fname, value in body.items():
            if fname not in spec.fields:
                findings.append(
                    Finding(
                        layer=Layer.SYNTACTIC,
                        path=f"{name}.{fname}",
                        message=f"unknown field {fname!r} in section {name!r}",
                        severity=Severity.ERROR,
                    )
                )
                continue
            kept[fname] = value
        sections[name] = kept

    return ConfigNode(level=level, sections=sections, findings=tuple(findings))


def load_config_file(path: str | Path, level: Level | str) -> ConfigNode:
    text = Path(path).read_text("utf-8")
    return parse_config(text, level)


def serialize_node(node: ConfigNode) -> str:
    """Render a node back to canonical JSON (sections only, sorted keys)."""
    return json.dumps(node.sections, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
