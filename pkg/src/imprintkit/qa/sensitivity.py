"""Rule-based sensitivity scanning.

The policy ships as data with an empty default; each imprint supplies its own
term list. Every hit cites the rule and the exact character span, ordered by
position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class SensitivityRule:
    id: str
    term: str
    message: str


@dataclass(frozen=True)
class SensitivityPolicy:
    rules: tuple[SensitivityRule, ...] = ()

    @classmethod
    def from_dict(cls, raw: dict) -> "SensitivityPolicy":
        return cls(
            rules=tuple(
                SensitivityRule(id=r["id"], term=r["term"], message=r.get("message", ""))
                for r in raw.get("rules", [])
            )
        )


@dataclass(frozen=True)
class SensitivityFinding:
    rule_id: str
    start: int
    end: int
    matched: str
    message: str

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "start": self.start,
            "end": self.end,
            "matched": self.matched,
            "message": self.message,
        }


@lru_cache(maxsize=1)
def default_policy() -> SensitivityPolicy:
    text = resources.files("imprintkit.qa").joinpath("data/sensitivity_policy.json").read_text(
        "utf-8"
    )
    return SensitivityPolicy.from_dict(json.loads(text))


def load_policy(path: str | Path) -> SensitivityPolicy:
    return SensitivityPolicy.from_dict(json.loads(Path(path).read_text("utf-8")))


def sensitivity_scan(text: str, policy: SensitivityPolicy | None = None) -> list[SensitivityFinding]:
    """Case-insensitive term scan; overlapping hits are all reported."""
    if policy is None:
        policy = default_policy()
    folded = text.lower()
    findings: list[SensitivityFinding] = []
    for rule in policy.rules:
        needle = rule.term.lower()
        if not needle:
            continue
        start = folded.find(needle)
        while start != -1:
            end = start + len(needle)
            findings.append(
                SensitivityFinding(
                    rule_id=rule.id,
                    start=start,
                    end=end,
                    matched=text[start:end],
                    message=rule.message or f"term {rule.term!r} is flagged by policy",
                )
            )
            start = folded.find(needle, start + 1)
    findings.sort(key=lambda f: (f.start, f.end, f.rule_id))
    return findings
