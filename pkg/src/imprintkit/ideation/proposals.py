"""Book proposals, editorial decisions, and project assignments."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum

from ..errors import ContractError


class ProposalStatus(str, Enum):
    CANDIDATE = "candidate"
    FLAGGED = "flagged"
    APPROVED = "approved"
    NEEDS_MODIFICATION = "needs_modification"
    RETURNED_FOR_REFINEMENT = "returned_for_refinement"
    REJECTED = "rejected"
    ARCHIVED = "archived"


class DecisionAction(str, Enum):
    APPROVE = "approve"
    REQUEST_MODIFICATIONS = "request_modifications"
    RETURN_FOR_REFINEMENT = "return_for_refinement"
    REJECT = "reject"


#: Status a proposal lands in after each editorial action.
STATUS_AFTER_ACTION: dict[DecisionAction, ProposalStatus] = {
    DecisionAction.APPROVE: ProposalStatus.APPROVED,
    DecisionAction.REQUEST_MODIFICATIONS: ProposalStatus.NEEDS_MODIFICATION,
    DecisionAction.RETURN_FOR_REFINEMENT: ProposalStatus.RETURNED_FOR_REFINEMENT,
    DecisionAction.REJECT: ProposalStatus.REJECTED,
}


@dataclass(frozen=True)
class BookProposal:
    """One candidate book concept produced by an ideation cycle."""

    id: str
    working_title: str
    abstract: str
    target_audience: str
    estimated_scope: str
    outline: tuple[str, ...]
    origin_cycle: str
    status: ProposalStatus = ProposalStatus.CANDIDATE

    def __post_init__(self):
        if not self.working_title:
            raise ContractError("proposal working_title must be non-empty")
        if not self.abstract:
            raise ContractError("proposal abstract must be non-empty")

    def with_status(self, status: ProposalStatus) -> "BookProposal":
        return replace(self, status=status)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "working_title": self.working_title,
            "abstract": self.abstract,
            "target_audience": self.target_audience,
            "estimated_scope": self.estimated_scope,
            "outline": list(self.outline),
            "origin_cycle": self.origin_cycle,
            "status": self.status.value,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "BookProposal":
        return cls(
            id=raw["id"],
            working_title=raw["working_title"],
            abstract=raw["abstract"],
            target_audience=raw.get("target_audience", ""),
            estimated_scope=raw.get("estimated_scope", ""),
            outline=tuple(raw.get("outline", ())),
            origin_cycle=raw.get("origin_cycle", ""),
            status=ProposalStatus(raw.get("status", "candidate")),
        )


@dataclass(frozen=True)
class EditorialDecision:
    """A recorded human verdict on one proposal.

    Feedback is required for every action except approve, because rejection
    and refinement feedback feeds back into later generation cycles.
    """

    proposal_id: str
    action: DecisionAction
    feedback: str
    actor: str
    timestamp: datetime = field(
        default_factory=lambda: datetime.now(timezone.utc)
    )

    def __post_init__(self):
        if self.action is not DecisionAction.APPROVE and not self.feedback.strip():
            raise ContractError(
                f"action {self.action.value!r} requires non-empty feedback"
            )

    def to_dict(self) -> dict:
        return {
            "proposal_id": self.proposal_id,
            "action": self.action.value,
            "feedback": self.feedback,
            "actor": self.actor,
            "timestamp": self.timestamp.isoformat(),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "EditorialDecision":
        return cls(
            proposal_id=raw["proposal_id"],
            action=DecisionAction(raw["action"]),
            feedback=raw.get("feedback", ""),
            actor=raw.get("actor", ""),
            timestamp=datetime.fromisoformat(raw["timestamp"]),
        )


@dataclass(frozen=True)
class ProjectRecord:
    """Development project created when a proposal is approved."""

    project_id: str
    proposal_id: str
    week_slot: int

    def to_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "proposal_id": self.proposal_id,
            "week_slot": self.week_slot,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ProjectRecord":
        return cls(raw["project_id"], raw["proposal_id"], int(raw["week_slot"]))
