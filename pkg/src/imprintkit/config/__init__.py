"""Hierarchical imprint configuration: parse, resolve, validate, version."""

from .model import (
    ChangeKind,
    ConfigNode,
    Level,
    ResolvedConfig,
    SemanticVersion,
    bump_version,
)
from .parse import load_config_file, parse_config, serialize_node
from .resolve import resolve
from .schema import load_schema, required_paths, section_names
from .validate import (
    BusinessRule,
    RuleSet,
    binding_matches_rendition,
    default_rules,
    load_rules_file,
    load_rules_text,
    validate,
)

__all__ = [
    "BusinessRule",
    "ChangeKind",
    "ConfigNode",
    "Level",
    "ResolvedConfig",
    "RuleSet",
    "SemanticVersion",
    "binding_matches_rendition",
    "bump_version",
    "default_rules",
    "load_config_file",
    "load_rules_file",
    "load_rules_text",
    "load_schema",
    "parse_config",
    "required_paths",
    "resolve",
    "section_names",
    "serialize_node",
    "validate",
]
