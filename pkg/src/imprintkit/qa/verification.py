"""Quotation verification with an injected source checker.

A quotation is verified only when the checker confirms the source exists and
supports the quoted text. Checker outages leave the quotation unverified —
never silently verified — and an unverified quotation blocks everything
downstream. Every record carries the human-readable appendix entry that
documents the verification in the finished book.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Protocol

from ..codex import QuotationRecord
from ..errors import ImprintError


class VerificationStatus(str, Enum):
    VERIFIED = "verified"
    UNVERIFIED = "unverified"
    FAILED = "failed"


class CheckerUnavailable(ImprintError):
    """The source checker could not be reached."""


@dataclass(frozen=True)
class CheckOutcome:
    exists: bool
    supports: bool
    method: str
    evidence: str = ""
    reason: str = ""


class SourceChecker(Protocol):
    def check(self, quotation: QuotationRecord) -> CheckOutcome: ...


class FixtureChecker:
    """Deterministic checker backed by a known text corpus (tests, demos)."""

    def __init__(self, corpus: dict[str, str] | None = None, *, available: bool = True):
        self._corpus = dict(corpus or {})
        self._available = available

    def check(self, quotation: QuotationRecord) -> CheckOutcome:
        if not self._available:
            raise CheckerUnavailable("fixture checker marked unavailable")
        evidence = self._corpus.get(quotation.text)
        if evidence is None:
            return CheckOutcome(
                exists=False,
                supports=False,
                method="fixture-corpus",
                reason="quotation text not found in the reference corpus",
            )
        return CheckOutcome(
            exists=True, supports=True, method="fixture-corpus", evidence=evidence
        )


@dataclass(frozen=True)
class VerificationRecord:
    quotation_index: int
    status: VerificationStatus
    method: str
    evidence: str
    appendix_entry: str

    def to_dict(self) -> dict:
        return {
            "quotation_index": self.quotation_index,
            "status": self.status.value,
            "method": self.method,
            "evidence": self.evidence,
            "appendix_entry": self.appendix_entry,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "VerificationRecord":
        return cls(
            quotation_index=int(raw["quotation_index"]),
            status=VerificationStatus(raw["status"]),
            method=raw.get("method", ""),
            evidence=raw.get("evidence", ""),
            appendix_entry=raw.get("appendix_entry", ""),
        )


def _appendix_entry(
    index: int, q: QuotationRecord, status: VerificationStatus, method: str, detail: str
) -> str:
    snippet = q.text if len(q.text) <= 60 else q.text[:57] + "..."
    line = (
        f'{index + 1}. "{snippet}" — {q.author}, {q.source_work}: '
        f"{status.value} via {method}."
    )
    if detail:
        line += f" {detail}"
    return line


def verify_quotation(
    q: QuotationRecord, checker: SourceChecker, *, index: int = 0
) -> VerificationRecord:
    """Run one quotation through the checker and record the outcome."""
    try:
        outcome = checker.check(q)
    except CheckerUnavailable as exc:
        status = VerificationStatus.UNVERIFIED
        detail = f"Checker unavailable: {exc}."
        return VerificationRecord(
            quotation_index=index,
            status=status,
            method="unavailable",
            evidence="",
            appendix_entry=_appendix_entry(index, q, status, "unavailable", detail),
        )
    if outcome.exists and outcome.supports and outcome.evidence:
        status = VerificationStatus.VERIFIED
        detail = outcome.evidence
    else:
        status = VerificationStatus.FAILED
        detail = outcome.reason or "source does not support the quotation"
    return VerificationRecord(
        quotation_index=index,
        status=status,
        method=outcome.method,
        evidence=outcome.evidence if status is VerificationStatus.VERIFIED else "",
        appendix_entry=_appendix_entry(index, q, status, outcome.method, detail),
    )


def verify_all(
    quotations: list[QuotationRecord], checker: SourceChecker
) -> list[VerificationRecord]:
    return [verify_quotation(q, checker, index=i) for i, q in enumerate(quotations)]


def build_verification_appendix(records: list[VerificationRecord]) -> str:
    """One appendix entry per quotation, in quotation order."""
    ordered = sorted(records, key=lambda r: r.quotation_index)
    return "\n".join(r.appendix_entry for r in ordered)


def all_verified(records: list[VerificationRecord]) -> bool:
    return bool(records) and all(
        r.status is VerificationStatus.VERIFIED for r in records
    )
