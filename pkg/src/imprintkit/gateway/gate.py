"""Human gates on high-stakes actions.

Distribution submission always requires a recorded human approval; the known
low-stakes automation kinds run ungated; anything unknown fails closed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone

from ..errors import GateError

#: Action kinds with an explicit gate policy. Unlisted kinds require a human.
GATE_POLICY: dict[str, bool] = {
    "distribution_submission": True,
    "matchup_evaluation": False,
    "draft_generation": False,
}


@dataclass(frozen=True)
class ApprovalRecord:
    actor: str
    timestamp: datetime
    note: str = ""

    def to_dict(self) -> dict:
        return {"actor": self.actor, "timestamp": self.timestamp.isoformat(), "note": self.note}

    @classmethod
    def from_dict(cls, raw: dict) -> "ApprovalRecord":
        return cls(
            actor=raw["actor"],
            timestamp=datetime.fromisoformat(raw["timestamp"]),
            note=raw.get("note", ""),
        )


@dataclass(frozen=True)
class GateRequirement:
    action_kind: str
    requires_human: bool
    approval_record: ApprovalRecord | None = None

    @property
    def satisfied(self) -> bool:
        return not self.requires_human or self.approval_record is not None


def gate(action_kind: str) -> GateRequirement:
    """The gate requirement for an action kind; unknown kinds fail closed."""
    requires_human = GATE_POLICY.get(action_kind, True)
    return GateRequirement(action_kind=action_kind, requires_human=requires_human)


def approve_gate(
    requirement: GateRequirement, actor: str, note: str = "", *, now: datetime | None = None
) -> GateRequirement:
    """Attach a human approval record to a gate requirement."""
    if not actor:
        raise GateError("approval requires a named human actor")
    record = ApprovalRecord(actor=actor, timestamp=now or datetime.now(timezone.utc), note=note)
    return replace(requirement, approval_record=record)


def require_approval(requirement: GateRequirement) -> None:
    """Raise unless the gate is satisfied; call immediately before executing."""
    if not requirement.satisfied:
        raise GateError(
            f"action {requirement.action_kind!r} requires human approval and has none"
        )
