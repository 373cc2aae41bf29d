"""Codex-type manifests and quotation records.

A manifest lists a book's parts in order plus per-part layout requirements.
The pilsa codex type has a fixed ten-part sequence; the quotation block is
checked against the manifest's expected count and the fair-use word limit
(strictly under 250 words per quotation).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from ..report import Finding, Layer, Severity, ValidationReport


class CodexType(str, Enum):
    STANDARD = "standard"
    TEXTBOOK = "textbook"
    REFERENCE = "reference"
    PILSA = "pilsa"


#: The required part order for a pilsa codex.
PILSA_PARTS = (
    "title_page",
    "publishers_information",
    "contents",
    "publishers_note",
    "foreword",
    "glossary",
    "quotations_for_transcription",
    "mnemonics",
    "selection_and_verification",
    "bibliography",
)

#: Strict fair-use ceiling: a quotation of 250 words or more is rejected.
QUOTATION_WORD_LIMIT = 250

DEFAULT_QUOTATION_COUNT = 100


@dataclass(frozen=True)
class CodexManifest:
    codex_type: CodexType
    parts: tuple[str, ...]
    layout_requirements: dict[str, dict[str, Any]] = field(default_factory=dict)
    expected_quotations: int = DEFAULT_QUOTATION_COUNT

    @classmethod
    def pilsa(
        cls,
        *,
        layout_requirements: dict[str, dict[str, Any]] | None = None,
        expected_quotations: int = DEFAULT_QUOTATION_COUNT,
    ) -> "CodexManifest":
        return cls(
            codex_type=CodexType.PILSA,
            parts=PILSA_PARTS,
            layout_requirements=layout_requirements or {},
            expected_quotations=expected_quotations,
        )

    @classmethod
    def from_dict(cls, raw: dict) -> "CodexManifest":
        return cls(
            codex_type=CodexType(raw["codex_type"]),
            parts=tuple(raw["parts"]),
            layout_requirements=dict(raw.get("layout_requirements", {})),
            expected_quotations=int(raw.get("expected_quotations", DEFAULT_QUOTATION_COUNT)),
        )

    def to_dict(self) -> dict:
        return {
            "codex_type": self.codex_type.value,
            "parts": list(self.parts),
            "layout_requirements": self.layout_requirements,
            "expected_quotations": self.expected_quotations,
        }


@dataclass(frozen=True)
class QuotationRecord:
    """One verified quotation destined for a transcription spread.

    ``word_count`` is always the whitespace-token count of the text; it is
    computed at construction so the two can never drift apart.
    """

    text: str
    author: str
    source_work: str
    citation: str
    editorial_note: str | None = None
    verified: bool = False
    word_count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "word_count", len(self.text.split()))

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "author": self.author,
            "source_work": self.source_work,
            "citation": self.citation,
            "editorial_note": self.editorial_note,
            "verified": self.verified,
            "word_count": self.word_count,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "QuotationRecord":
        return cls(
            text=raw["text"],
            author=raw.get("author", ""),
            source_work=raw.get("source_work", ""),
            citation=raw.get("citation", ""),
            editorial_note=raw.get("editorial_note"),
            verified=bool(raw.get("verified", False)),
        )


def load_manifest(path: str | Path) -> CodexManifest:
    return CodexManifest.from_dict(json.loads(Path(path).read_text("utf-8")))


def load_quotations(path: str | Path) -> list[QuotationRecord]:
    raw = json.loads(Path(path).read_text("utf-8"))
    return [QuotationRecord.from_dict(item) for item in raw]


def validate_manifest(
    manifest: CodexManifest,
    quotations: list[QuotationRecord],
    expected_count: int | None = None,
) -> ValidationReport:
    """Check part order, quotation count, verification, and word limits.

    All problems are findings; nothing raises.
    """
    if expected_count is None:
        expected_count = manifest.expected_quotations
    report = ValidationReport()

    if manifest.codex_type is CodexType.PILSA:
        _check_part_order(manifest.parts, report)

    if len(quotations) != expected_count:
        report.findings.append(
            Finding(
                Layer.SEMANTIC,
                "quotations",
                f"expected {expected_count} quotations, got {len(quotations)}",
            )
        )
    for i, q in enumerate(quotations):
        if not q.citation.strip():
            report.findings.append(
                Finding(Layer.SEMANTIC, f"quotations[{i}].citation", "citation is empty")
            )
        if q.word_count >= QUOTATION_WORD_LIMIT:
            report.findings.append(
                Finding(
                    Layer.SEMANTIC,
                    f"quotations[{i}].word_count",
                    f"quotation {i} has {q.word_count} words; the limit is strictly "
                    f"under {QUOTATION_WORD_LIMIT}",
                )
            )
        if not q.verified:
            report.findings.append(
                Finding(
                    Layer.BUSINESS_RULE,
                    f"quotations[{i}].verified",
                    f"quotation {i} is not verified",
                )
            )
    return report


def _check_part_order(parts: tuple[str, ...], report: ValidationReport) -> None:
    if parts == PILSA_PARTS:
        return
    expected = set(PILSA_PARTS)
    actual = set(parts)
    for missing in PILSA_PARTS:
        if missing not in actual:
            report.findings.append(
                Finding(Layer.SYNTACTIC, f"parts.{missing}", f"required part {missing!r} is missing")
            )
    for extra in parts:
        if extra not in expected:
            report.findings.append(
                Finding(Layer.SYNTACTIC, f"parts.{extra}", f"unknown part {extra!r}")
            )
    if actual == expected:
        first_bad = next(
            (got for got, want in zip(parts, PILSA_PARTS) if got != want), parts[0]
        )
        report.findings.append(
            Finding(
                Layer.SEMANTIC,
                f"parts.{first_bad}",
                f"parts are out of order starting at {first_bad!r}; the pilsa "
                f"sequence is {', '.join(PILSA_PARTS)}",
            )
        )
