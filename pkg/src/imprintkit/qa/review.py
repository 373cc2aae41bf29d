"""Automated consistency review through the model gateway."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import GatewayExhaustedError, ReviewError, UsageError
from ..persona import PromptBundle, TaskKind
from ..gateway import build_request

_REVIEW_INSTRUCTIONS = (
    "You are the imprint's consistency reviewer. Identify argumentative gaps "
    "and contradictions with maximum reliability; invent nothing."
)


@dataclass(frozen=True)
class ReviewFinding:
    issue: str
    span: str = ""

    def to_dict(self) -> dict:
        return {"issue": self.issue, "span": self.span}


def consistency_review(text: str, gateway, cfg) -> list[ReviewFinding]:
    """Ask the gateway for argumentative gaps and contradictions in the text.

    Runs as an analytical task, which pins the temperature to 0.0. A gateway
    exhaustion or an unparseable response is a ReviewError: a book cannot
    pass QA unreviewed.
    """
    if not text or not text.strip():
        raise UsageError("cannot review empty manuscript text")

    from ..persona import render_template
    from importlib import resources

    template = (
        resources.files("imprintkit.persona")
        .joinpath("data/templates/analytical.txt")
        .read_text("utf-8")
    )
    bundle = PromptBundle(
        system_text=_REVIEW_INSTRUCTIONS,
        user_text=render_template(template, {"text": text}),
        task_kind=TaskKind.ANALYTICAL,
    )
    request = build_request(bundle, cfg)
    try:
        response = gateway.call(request)
    except GatewayExhaustedError as exc:
        raise ReviewError(f"consistency review failed: {exc}") from exc

    try:
        raw = json.loads(response.text)
    except json.JSONDecodeError:
        raise ReviewError(
            f"consistency reviewer returned unparseable output: {response.text[:80]!r}"
        ) from None
    if not isinstance(raw, list):
        raise ReviewError("consistency reviewer must return a JSON array of findings")
    return [
        ReviewFinding(issue=str(item.get("issue", "")), span=str(item.get("span", "")))
        for item in raw
        if isinstance(item, dict)
    ]
