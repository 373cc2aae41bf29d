"""Flagging tournament winners for human editorial review."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UsageError
from .proposals import BookProposal, ProposalStatus
from .tournament import MatchOutcome, TournamentResult


@dataclass(frozen=True)
class FlaggedEntry:
    """One proposal handed to the editor, with its full competitive record."""

    rank: int
    proposal: BookProposal
    rationale: str
    matches: tuple[MatchOutcome, ...]

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "proposal": self.proposal.to_dict(),
            "rationale": self.rationale,
            "matches": [m.to_dict() for m in self.matches],
        }


@dataclass(frozen=True)
class ReviewPacket:
    entries: tuple[FlaggedEntry, ...]

    @property
    def proposal_ids(self) -> tuple[str, ...]:
        return tuple(e.proposal.id for e in self.entries)

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries]}


def flag_for_review(result: TournamentResult, k: int) -> ReviewPacket:
    """Package the top-k ranked proposals with rationales and transcripts.

    Flagged proposals transition to flagged status inside the packet; the
    caller is responsible for persisting that transition.
    """
    n = len(result.ranking)
    if not (1 <= k <= n):
        raise UsageError(f"k must be between 1 and the entrant count {n}, got {k}")

    entries = []
    for rank, pid in enumerate(result.ranking[:k], start=1):
        stats = result.stats[pid]
        proposal = result.proposals[pid].with_status(ProposalStatus.FLAGGED)
        placement = (
            "champion"
            if stats.eliminated_round is None
            else f"eliminated in round {stats.eliminated_round}"
        )
        rationale = (
            f"Finished #{rank} of {n}: {placement} with {stats.wins} match win(s) "
            f"from seed position {stats.seed_position + 1}."
        )
        entries.append(
            FlaggedEntry(
                rank=rank,
                proposal=proposal,
                rationale=rationale,
                matches=result.matches_for(pid),
            )
        )
    return ReviewPacket(entries=tuple(entries))
