"""One ideation cycle: generate, dedup, seed, play, flag.

``run_cycle_stages`` is the pure pipeline — no persistence, fully determined
by (config, archive state, seed, backends) — so replays and brute-force
stage-by-stage comparisons are trivial. The service wraps it with event
persistence and always stops at the human review checkpoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..ideation import (
    Bracket,
    ProposalArchive,
    ProposalGenerator,
    PairwiseEvaluator,
    ReviewPacket,
    TournamentResult,
    filter_duplicates,
    flag_for_review,
    run_tournament,
    seed_bracket,
)
from ..ideation.similarity import DEFAULT_DUPLICATE_THRESHOLD

DEFAULT_BATCH_SIZE = 24
DEFAULT_TOP_K = 5
MIN_TOP_K = 3


@dataclass(frozen=True)
class CycleReport:
    cycle_id: str
    seed: int
    generated_count: int
    deduplicated_count: int
    entrant_count: int
    tournament_id: str | None
    flagged_proposal_ids: tuple[str, ...]
    awaiting_review: bool
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "cycle_id": self.cycle_id,
            "seed": self.seed,
            "generated_count": self.generated_count,
            "deduplicated_count": self.deduplicated_count,
            "entrant_count": self.entrant_count,
            "tournament_id": self.tournament_id,
            "flagged_proposal_ids": list(self.flagged_proposal_ids),
            "awaiting_review": self.awaiting_review,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, raw: dict) -> "CycleReport":
        return cls(
            cycle_id=raw["cycle_id"],
            seed=int(raw["seed"]),
            generated_count=int(raw["generated_count"]),
            deduplicated_count=int(raw["deduplicated_count"]),
            entrant_count=int(raw["entrant_count"]),
            tournament_id=raw.get("tournament_id"),
            flagged_proposal_ids=tuple(raw.get("flagged_proposal_ids", ())),
            awaiting_review=bool(raw["awaiting_review"]),
            warnings=tuple(raw.get("warnings", ())),
        )


@dataclass
class CycleArtifacts:
    """Everything one cycle produced, for persistence and review."""

    report: CycleReport
    kept: list = field(default_factory=list)
    discarded: list = field(default_factory=list)
    bracket: Bracket | None = None
    result: TournamentResult | None = None
    packet: ReviewPacket | None = None


def run_cycle_stages(
    cfg,
    persona,
    archive: ProposalArchive,
    seed: int,
    *,
    generator: ProposalGenerator,
    evaluator: PairwiseEvaluator,
    cycle_id: str,
    tournament_id: str,
    batch_size: int | None = None,
    top_k: int | None = None,
) -> CycleArtifacts:
    """Execute the pipeline stages and return every intermediate artifact.

    No auto-approval ever: the pipeline ends with flagged proposals awaiting
    a human decision.
    """
    n = batch_size or DEFAULT_BATCH_SIZE
    threshold = cfg.get("automation.duplicate_threshold", DEFAULT_DUPLICATE_THRESHOLD)
    batch = generator.generate(n, cycle_id=cycle_id, avoid=archive.rejection_feedback())
    kept, discarded = filter_duplicates(batch, archive, threshold=threshold)

    if not kept:
        report = CycleReport(
            cycle_id=cycle_id,
            seed=seed,
            generated_count=len(batch),
            deduplicated_count=len(discarded),
            entrant_count=0,
            tournament_id=None,
            flagged_proposal_ids=(),
            awaiting_review=False,
            warnings=("every generated proposal duplicated a rejected archive entry",),
        )
        return CycleArtifacts(report=report, kept=[], discarded=discarded)

    bracket = seed_bracket(kept, rng_seed=seed)
    result = run_tournament(bracket, evaluator)

    k = top_k if top_k is not None else cfg.get("automation.review_top_k", DEFAULT_TOP_K)
    k = max(1, min(int(k), len(kept)))
    packet = flag_for_review(result, k)

    report = CycleReport(
        cycle_id=cycle_id,
        seed=seed,
        generated_count=len(batch),
        deduplicated_count=len(discarded),
        entrant_count=len(kept),
        tournament_id=tournament_id,
        flagged_proposal_ids=packet.proposal_ids,
        awaiting_review=True,
    )
    return CycleArtifacts(
        report=report,
        kept=kept,
        discarded=discarded,
        bracket=bracket,
        result=result,
        packet=packet,
    )
