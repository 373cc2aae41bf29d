"""Deterministic assembly of persona-conditioned prompts.

Templates are UTF-8 text files with ``{slot}`` placeholders, stored as
package data so editors can tune persona voice without code changes. Only
slot names made of lowercase letters and underscores are substituted; JSON
braces in the templates pass through untouched.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from typing import Any, Mapping

from ..errors import ContractError
from .model import PromptBundle, PublisherPersona, TaskKind

_SLOT_RE = re.compile(r"\{([a-z_]+)\}")

#: Required payload keys per task kind; extras are rejected to keep the
#: payload shapes honest contracts.
PAYLOAD_SHAPES: dict[TaskKind, dict[str, frozenset[str]]] = {
    TaskKind.CREATIVE: {
        "required": frozenset({"count"}),
        "optional": frozenset({"charter", "genres", "audience", "avoid"}),
    },
    TaskKind.CRITICAL: {
        "required": frozenset({"proposal_a", "proposal_b"}),
        "optional": frozenset(),
    },
    TaskKind.ANALYTICAL: {
        "required": frozenset({"text"}),
        "optional": frozenset(),
    },
}


@lru_cache(maxsize=None)
def _template(name: str) -> str:
    return (
        resources.files("imprintkit.persona")
        .joinpath(f"data/templates/{name}.txt")
        .read_text("utf-8")
    )


def render_template(template: str, slots: Mapping[str, str]) -> str:
    """Substitute ``{slot}`` placeholders; unknown slots are an error."""

    def sub(match: re.Match) -> str:
        key = match.group(1)
        if key not in slots:
            raise ContractError(f"template references undefined slot {{{key}}}")
        return slots[key]

    return _SLOT_RE.sub(sub, template)


def _check_payload(task_kind: TaskKind, payload: Mapping[str, Any]) -> None:
    shape = PAYLOAD_SHAPES[task_kind]
    keys = set(payload)
    missing = shape["required"] - keys
    unknown = keys - shape["required"] - shape["optional"]
    if missing:
        raise ContractError(
            f"{task_kind.value} payload missing required key(s): {sorted(missing)}"
        )
    if unknown:
        raise ContractError(
            f"{task_kind.value} payload has unexpected key(s): {sorted(unknown)}"
        )


def format_proposal(p: Mapping[str, Any]) -> str:
    """Render one proposal record into the stable block used by matchup prompts."""
    outline = p.get("outline") or ()
    lines = [
        f"Working title: {p.get('working_title', '')}",
        f"Abstract: {p.get('abstract', '')}",
        f"Target audience: {p.get('target_audience', '')}",
        f"Estimated scope: {p.get('estimated_scope', '')}",
        "Outline: " + "; ".join(outline),
    ]
    return "\n".join(lines)


def assemble_prompt(
    persona: PublisherPersona, task_kind: TaskKind | str, payload: Mapping[str, Any]
) -> PromptBundle:
    """Build the system/user prompt pair for a task.

    Pure function of its inputs: the same persona, kind, and payload always
    produce byte-identical bundles. A persona with no preferred topics omits
    the topics block entirely.
    """
    if isinstance(task_kind, str):
        try:
            task_kind = TaskKind(task_kind)
        except ValueError:
            raise ContractError(f"unknown task kind {task_kind!r}") from None
    _check_payload(task_kind, payload)

    traits = persona.traits
    topics_block = (
        f"Preferred topics: {', '.join(persona.hobby_horses)}.\n" if persona.hobby_horses else ""
    )
    system_text = render_template(
        _template("system"),
        {
            "name": persona.name,
            "philosophy": persona.editorial_philosophy,
            "risk_tolerance": persona.risk_tolerance.value,
            "decision_style": persona.decision_style,
            "patience": f"{traits.patience:.2f}",
            "openness": f"{traits.openness:.2f}",
            "nuance_appreciation": f"{traits.nuance_appreciation:.2f}",
            "intellectual_rigor": f"{traits.intellectual_rigor:.2f}",
            "topics_block": topics_block,
        },
    )

    if task_kind is TaskKind.CREATIVE:
        avoid = payload.get("avoid") or ()
        avoid_block = (
            "Avoid revisiting these previously rejected directions:\n"
            + "".join(f"- {item}\n" for item in avoid)
            if avoid
            else ""
        )
        user_text = render_template(
            _template("creative"),
            {
                "count": str(payload["count"]),
                "charter": str(payload.get("charter", "")),
                "genres": ", ".join(payload.get("genres") or ()),
                "audience": str(payload.get("audience", "")),
                "avoid_block": avoid_block,
            },
        )
    elif task_kind is TaskKind.CRITICAL:
        user_text = render_template(
            _template("critical"),
            {
                "proposal_a": format_proposal(payload["proposal_a"]),
                "proposal_b": format_proposal(payload["proposal_b"]),
            },
        )
    else:
        text = payload["text"]
        if not isinstance(text, str) or not text.strip():
            raise ContractError("analytical payload text must be non-empty")
        user_text = render_template(_template("analytical"), {"text": text})

    return PromptBundle(system_text=system_text, user_text=user_text, task_kind=task_kind)
