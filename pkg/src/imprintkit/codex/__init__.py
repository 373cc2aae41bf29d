"""Codex manifests, pilsa layout, typography fallback, palette, emission."""

from .emit import (
    emit_cover_source,
    emit_typeset_source,
    escape_tex,
    spine_width_inches,
)
from .layout import (
    MESSAGE_INTERVAL,
    PageKind,
    PageRecord,
    PageSequence,
    PageSide,
    build_pilsa_layout,
)
from .manifest import (
    DEFAULT_QUOTATION_COUNT,
    PILSA_PARTS,
    QUOTATION_WORD_LIMIT,
    CodexManifest,
    CodexType,
    QuotationRecord,
    load_manifest,
    load_quotations,
    validate_manifest,
)
from .palette import PALETTE_KEYS, PaletteColor, choose_cover_color, load_palette, stable_hash
from .typography import (
    ROLES,
    FontChoice,
    FontSource,
    TypographySet,
    font_catalog,
    resolve_typography,
)

__all__ = [
    "CodexManifest",
    "CodexType",
    "DEFAULT_QUOTATION_COUNT",
    "FontChoice",
    "FontSource",
    "MESSAGE_INTERVAL",
    "PALETTE_KEYS",
    "PILSA_PARTS",
    "PageKind",
    "PageRecord",
    "PageSequence",
    "PageSide",
    "PaletteColor",
    "QUOTATION_WORD_LIMIT",
    "QuotationRecord",
    "ROLES",
    "TypographySet",
    "build_pilsa_layout",
    "choose_cover_color",
    "emit_cover_source",
    "emit_typeset_source",
    "escape_tex",
    "font_catalog",
    "load_manifest",
    "load_palette",
    "load_quotations",
    "resolve_typography",
    "spine_width_inches",
    "stable_hash",
    "validate_manifest",
]
