"""Config engine: parsing, resolution precedence, layered validation, versioning."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imprintkit.config import (
    ChangeKind,
    ConfigNode,
    Level,
    SemanticVersion,
    bump_version,
    load_schema,
    parse_config,
    resolve,
    serialize_node,
    validate,
)
from imprintkit.errors import (
    ConfigParseError,
    ContractError,
    ResolutionError,
    UsageError,
    VersionError,
)
from imprintkit.report import Layer, Severity


class TestParse:
    def test_table_fixture_values_land_at_imprint_level(self, imprint_node):
        assert imprint_node.level is Level.IMPRINT
        assert imprint_node.get("identity.imprint") == "Xynapse Traces"
        assert imprint_node.get("identity.publisher") == "Nimble Books LLC"
        assert imprint_node.get("config_metadata.version") == "1.0"
        assert imprint_node.get("config_metadata.last_updated") == "2024-07-18"

    def test_empty_document_has_zero_sections(self):
        node = parse_config("{}", Level.TITLE)
        assert node.level is Level.TITLE
        assert node.sections == {}
        assert node.findings == ()

    def test_unknown_section_is_syntactic_finding(self):
        node = parse_config(json.dumps({"brandng": {"tagline": "x"}}), "imprint")
        assert len(node.findings) == 1
        finding = node.findings[0]
        assert finding.layer is Layer.SYNTACTIC
        assert "brandng" in finding.message
        assert "brandng" not in node.sections

    def test_unknown_field_in_known_section_is_flagged(self):
        node = parse_config(json.dumps({"branding": {"taglne": "x"}}), "imprint")
        assert any("taglne" in f.message for f in node.findings)

    def test_malformed_document_reports_position(self):
        with pytest.raises(ConfigParseError) as exc:
            parse_config('{"identity": ', "publisher")
        assert exc.value.line is not None

    def test_unknown_level_is_usage_error(self):
        with pytest.raises(UsageError):
            parse_config("{}", "galaxy")

    def test_round_trip_preserves_fields(self, imprint_node):
        reparsed = parse_config(serialize_node(imprint_node), imprint_node.level)
        assert reparsed.sections == imprint_node.sections


class TestResolve:
    def test_title_override_wins_with_provenance(self, publisher_node, imprint_node):
        title = ConfigNode(level=Level.TITLE, sections={"book_defaults": {"trim_size": "5x8"}})
        cfg = resolve(publisher_node, imprint_node, title)
        assert cfg["book_defaults.trim_size"] == "5x8"
        assert cfg.provenance["book_defaults.trim_size"] is Level.TITLE

    def test_imprint_values_over_publisher_defaults(self, resolved_cfg):
        assert resolved_cfg["llm_config.preferred_models"][0] == "gemini/gemini-2.5-pro"
        assert resolved_cfg["llm_config.temperature"] == 0.6
        assert resolved_cfg.provenance["llm_config.temperature"] is Level.IMPRINT
        # contact only exists at publisher level
        assert resolved_cfg.provenance["identity.contact"] is Level.PUBLISHER

    def test_all_empty_enumerates_every_required_field(self):
        empty = lambda lvl: ConfigNode(level=lvl)
        with pytest.raises(ResolutionError) as exc:
            resolve(empty(Level.PUBLISHER), empty(Level.IMPRINT), empty(Level.TITLE))
        missing = exc.value.missing_paths
        assert "identity.imprint" in missing
        assert "llm_config.temperature" in missing
        assert len(missing) >= 40

    def test_mismatched_level_tags_rejected(self, publisher_node, imprint_node, title_node):
        with pytest.raises(ContractError):
            resolve(imprint_node, publisher_node, title_node)

    def test_idempotent_re_resolution(self, resolved_cfg):
        rewrapped = resolved_cfg.as_node(Level.PUBLISHER)
        again = resolve(
            rewrapped,
            ConfigNode(level=Level.IMPRINT),
            ConfigNode(level=Level.TITLE),
        )
        assert again.sections == resolved_cfg.sections


@st.composite
def sparse_overrides(draw):
    """Random subsets of (path, per-level string values) for precedence checks."""
    schema = load_schema()
    paths = [
        (s, f)
        for s, spec in schema.items()
        for f, fs in spec.fields.items()
        if fs.type == "string" and not fs.choices and not fs.pattern and not fs.semver
    ]
    chosen = draw(st.lists(st.sampled_from(paths), min_size=1, max_size=8, unique=True))
    levels = draw(
        st.lists(
            st.sets(st.sampled_from([Level.PUBLISHER, Level.IMPRINT, Level.TITLE]), min_size=1),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    return list(zip(chosen, levels))


class TestPrecedenceProperty:
    @settings(max_examples=50, deadline=None)
    @given(plan=sparse_overrides())
    def test_most_specific_level_always_wins(self, publisher_node, imprint_node, plan):
        sections = {lvl: {} for lvl in Level}
        for (section, fname), levels in plan:
            for lvl in levels:
                sections[lvl].setdefault(section, {})[fname] = f"{lvl.value}-value"
        # overlay the sparse random sections on the complete fixture hierarchy
        pub = ConfigNode(
            level=Level.PUBLISHER,
            sections=_merge(publisher_node.sections, sections[Level.PUBLISHER]),
        )
        imp = ConfigNode(
            level=Level.IMPRINT,
            sections=_merge(imprint_node.sections, sections[Level.IMPRINT]),
        )
        tit = ConfigNode(level=Level.TITLE, sections=sections[Level.TITLE])
        cfg = resolve(pub, imp, tit)
        # independent oracle: first-defined walk over the raw node sections
        by_level = {Level.TITLE: tit, Level.IMPRINT: imp, Level.PUBLISHER: pub}
        for (section, fname), _levels in plan:
            expected_level = next(
                lvl
                for lvl in (Level.TITLE, Level.IMPRINT, Level.PUBLISHER)
                if fname in by_level[lvl].sections.get(section, {})
            )
            expected_value = by_level[expected_level].sections[section][fname]
            assert cfg[f"{section}.{fname}"] == expected_value
            assert cfg.provenance[f"{section}.{fname}"] is expected_level


def _merge(base: dict, extra: dict) -> dict:
    out = {k: dict(v) for k, v in base.items()}
    for section, body in extra.items():
        out.setdefault(section, {}).update(body)
    return out


class TestValidate:
    def test_fixture_passes_all_layers(self, resolved_cfg):
        report = validate(resolved_cfg)
        assert report.passed, report.render_lines()

    def test_discount_within_range_passes(self, resolved_cfg):
        assert resolved_cfg["pricing.wholesale_discount_pct"]["US"] == 40
        assert resolved_cfg["pricing.markup_pct"] == 150
        assert validate(resolved_cfg).passed

    def test_discount_out_of_range_is_semantic_error(self, resolved_cfg):
        cfg = _mutate(resolved_cfg, "pricing", "wholesale_discount_pct",
                      {"US": 140, "UK": 40, "EU": 40, "CA": 40, "AU": 40})
        report = validate(cfg)
        errors = report.errors
        assert len(errors) == 1
        assert errors[0].layer is Layer.SEMANTIC
        assert errors[0].path == "pricing.wholesale_discount_pct.US"
        assert "out of range [0,100]" in errors[0].message

    def test_binding_rendition_mismatch_is_business_rule_error(self, resolved_cfg):
        cfg = _mutate(resolved_cfg, "book_defaults", "binding_type", "hardcover")
        report = validate(cfg)
        errors = report.errors
        assert len(errors) == 1
        assert errors[0].layer is Layer.BUSINESS_RULE
        assert "binding_type" in errors[0].path
        assert "conflicts with rendition" in errors[0].message

    def test_one_error_per_layer_yields_exactly_three_findings(self, resolved_cfg):
        cfg = _mutate(resolved_cfg, "llm_config", "validation", "yes")  # wrong type
        cfg = _mutate(cfg, "llm_config", "temperature", 3.5)  # out of range
        cfg = _mutate(cfg, "book_defaults", "binding_type", "hardcover")  # rule hit
        report = validate(cfg)
        assert len(report.findings) == 3
        assert {f.layer for f in report.findings} == {
            Layer.SYNTACTIC,
            Layer.SEMANTIC,
            Layer.BUSINESS_RULE,
        }

    def test_type_error_suppresses_constraint_noise_on_same_field(self, resolved_cfg):
        cfg = _mutate(resolved_cfg, "llm_config", "temperature", "hot")
        report = validate(cfg)
        assert len(report.errors) == 1
        assert report.errors[0].layer is Layer.SYNTACTIC


def _mutate(cfg, section, fname, value):
    from imprintkit.config import ResolvedConfig

    sections = {k: dict(v) for k, v in cfg.sections.items()}
    sections[section][fname] = value
    return ResolvedConfig(sections=sections, provenance=dict(cfg.provenance))


class TestVersioning:
    def test_two_part_versions_normalize(self):
        assert SemanticVersion.parse("1.0") == SemanticVersion(1, 0, 0)

    @pytest.mark.parametrize(
        "start,change,expected",
        [
            ("1.0.0", ChangeKind.STRUCTURAL, "2.0.0"),
            ("1.0.0", ChangeKind.FEATURE, "1.1.0"),
            ("1.4.2", ChangeKind.FIX, "1.4.3"),
        ],
    )
    def test_bump_rules(self, resolved_cfg, start, change, expected):
        cfg = _mutate(resolved_cfg, "config_metadata", "version", start)
        assert str(bump_version(cfg, change)) == expected

    def test_unparseable_version_errors(self, resolved_cfg):
        cfg = _mutate(resolved_cfg, "config_metadata", "version", "one point oh")
        with pytest.raises(VersionError):
            bump_version(cfg, ChangeKind.FIX)

    def test_unknown_change_kind_is_usage_error(self, resolved_cfg):
        with pytest.raises(UsageError):
            bump_version(resolved_cfg, "cosmetic")

    @settings(max_examples=100, deadline=None)
    @given(
        major=st.integers(0, 99),
        minor=st.integers(0, 99),
        patch=st.integers(0, 99),
        change=st.sampled_from(list(ChangeKind)),
    )
    def test_bump_strictly_increases(self, resolved_cfg, major, minor, patch, change):
        cfg = _mutate(resolved_cfg, "config_metadata", "version", f"{major}.{minor}.{patch}")
        assert bump_version(cfg, change) > SemanticVersion(major, minor, patch)
