"""The longitudinal proposal archive.

Holds every proposal ever generated, the append-only editorial decision log,
tournament history, and project assignments. The archive is a plain state
machine; persistence (event log and snapshots) lives in the service layer,
which writes through a single serialized command stream.
"""

from __future__ import annotations

from typing import Iterator

from ..errors import ContractError, NotFoundError, StateError
from .proposals import (
    STATUS_AFTER_ACTION,
    BookProposal,
    EditorialDecision,
    ProjectRecord,
    ProposalStatus,
)


class ProposalArchive:
    """In-memory archive state: proposals, decisions, tournaments, projects."""

    def __init__(self):
        self.proposals: dict[str, BookProposal] = {}
        self.decisions: list[EditorialDecision] = []
        self.tournament_ids: list[str] = []
        self.projects: dict[str, ProjectRecord] = {}

    # -- proposals ---------------------------------------------------------

    def add_proposal(self, proposal: BookProposal) -> None:
        if proposal.id in self.proposals:
            raise ContractError(f"proposal id {proposal.id!r} already archived")
        self.proposals[proposal.id] = proposal

    def get(self, proposal_id: str) -> BookProposal:
        try:
            return self.proposals[proposal_id]
        except KeyError:
            raise NotFoundError(f"unknown proposal {proposal_id!r}") from None

    def set_status(self, proposal_id: str, status: ProposalStatus) -> BookProposal:
        updated = self.get(proposal_id).with_status(status)
        self.proposals[proposal_id] = updated
        return updated

    def rejected(self) -> Iterator[BookProposal]:
        return (p for p in self.proposals.values() if p.status is ProposalStatus.REJECTED)

    def rejection_feedback(self) -> list[str]:
        """Feedback strings from reject decisions, oldest first. These feed
        subsequent generation cycles as negative guidance."""
        return [
            d.feedback
            for d in self.decisions
            if d.action.value == "reject" and d.feedback.strip()
        ]

    # -- decisions ----------------------------------------------------------

    def record_decision(self, decision: EditorialDecision) -> BookProposal:
        """Append a decision and move the proposal to the action's status."""
        proposal = self.get(decision.proposal_id)  # not-found check first
        self.decisions.append(decision)
        return self.set_status(proposal.id, STATUS_AFTER_ACTION[decision.action])

    # -- projects -----------------------------------------------------------

    def assign_project(self, proposal_id: str) -> ProjectRecord:
        """Create the development project for an approved proposal.

        The identifier is stable (derived from the proposal id) and the
        schedule slot is the earliest open weekly slot, one release per week.
        """
        proposal = self.get(proposal_id)
        if proposal.status is not ProposalStatus.APPROVED:
            raise StateError(
                f"proposal {proposal_id!r} is {proposal.status.value}, not approved"
            )
        if proposal_id in self.projects:
            raise StateError(f"proposal {proposal_id!r} is already scheduled")
        taken = {record.week_slot for record in self.projects.values()}
        week = 1
        while week in taken:
            week += 1
        record = ProjectRecord(
            project_id=f"proj-{proposal_id}", proposal_id=proposal_id, week_slot=week
        )
        self.projects[proposal_id] = record
        return record


def record_decision(archive: ProposalArchive, decision: EditorialDecision) -> BookProposal:
    return archive.record_decision(decision)


def assign_project(archive: ProposalArchive, proposal_id: str) -> ProjectRecord:
    return archive.assign_project(proposal_id)
