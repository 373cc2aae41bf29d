"""Structural citation format checks.

This is deliberately lightweight: the deep work (does the source exist, does
it support the claim) belongs to the source checker. Format checking only
confirms the structural pattern — author, year, title, present and in the
style's order.
"""

from __future__ import annotations

import re

from ..errors import UsageError

SUPPORTED_STYLES = ("chicago",)

_YEAR_RE = re.compile(r"\b(1[5-9]\d{2}|20\d{2})[a-z]?\b")


def check_citation_format(citation: str, style: str = "chicago") -> list[str]:
    """Return structural findings for a citation; empty means it conforms."""
    if style not in SUPPORTED_STYLES:
        raise UsageError(
            f"unsupported citation style {style!r}; supported: {', '.join(SUPPORTED_STYLES)}"
        )
    findings: list[str] = []
    text = citation.strip()
    if not text:
        return ["citation is empty"]

    year_match = _YEAR_RE.search(text)
    if not year_match:
        findings.append("year absent")

    author = text[: year_match.start()].strip(" .") if year_match else text
    if not re.search(r"[A-Za-z]", author):
        findings.append("author absent")

    if year_match:
        rest = text[year_match.end():]
        title = rest.strip(" .,")
        if not re.search(r"[A-Za-z]", title):
            findings.append("title absent")
        # chicago author-date: a period separates the year from the title
        elif not rest.lstrip().startswith("."):
            findings.append("year must be followed by a period before the title")
    return findings
