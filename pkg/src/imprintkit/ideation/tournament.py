"""Pairwise matchups and tournament execution.

Every matchup judges the two proposals against the five editorial criteria
and must name a single winner; the per-criterion judgments are advisory
detail for the human reviewer. A tournament over N entrants always plays
exactly N - 1 matches.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Protocol

from ..errors import ContractError, EvaluationError, TournamentAbortedError
from .bracket import Bracket
from .proposals import BookProposal

#: The five evaluation criteria every matchup must judge.
CRITERIA = (
    "scholarly_contribution",
    "market_viability",
    "philosophy_alignment",
    "resource_requirements",
    "potential_impact",
)


@dataclass(frozen=True)
class CriterionJudgment:
    criterion: str
    preferred: str  # "a" or "b"
    note: str

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "preferred": self.preferred, "note": self.note}

    @classmethod
    def from_dict(cls, raw: dict) -> "CriterionJudgment":
        return cls(raw["criterion"], raw["preferred"], raw.get("note", ""))


@dataclass(frozen=True)
class MatchOutcome:
    """The result of one pairwise comparison, with full rationale."""

    a: str
    b: str
    winner: str
    rationale: str
    criterion_judgments: tuple[CriterionJudgment, ...]
    round_number: int = 0

    def __post_init__(self):
        if self.winner not in (self.a, self.b):
            raise ContractError("match winner must be one of the two entrants")
        judged = [j.criterion for j in self.criterion_judgments]
        if sorted(judged) != sorted(CRITERIA):
            raise ContractError(
                f"matchup must judge exactly the five criteria, got {judged}"
            )

    @property
    def loser(self) -> str:
        return self.b if self.winner == self.a else self.a

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "winner": self.winner,
            "rationale": self.rationale,
            "criterion_judgments": [j.to_dict() for j in self.criterion_judgments],
            "round_number": self.round_number,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "MatchOutcome":
        return cls(
            a=raw["a"],
            b=raw["b"],
            winner=raw["winner"],
            rationale=raw.get("rationale", ""),
            criterion_judgments=tuple(
                CriterionJudgment.from_dict(j) for j in raw.get("criterion_judgments", ())
            ),
            round_number=int(raw.get("round_number", 0)),
        )


@dataclass(frozen=True)
class EntrantStats:
    seed_position: int
    wins: int
    eliminated_round: int | None  # None for the champion

    def to_dict(self) -> dict:
        return {
            "seed_position": self.seed_position,
            "wins": self.wins,
            "eliminated_round": self.eliminated_round,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "EntrantStats":
        return cls(int(raw["seed_position"]), int(raw["wins"]), raw.get("eliminated_round"))


@dataclass(frozen=True)
class TournamentResult:
    """The ranked ordering that emerges from a completed bracket."""

    ranking: tuple[str, ...]
    transcripts: tuple[MatchOutcome, ...]
    champion: str
    stats: dict[str, EntrantStats]
    proposals: dict[str, BookProposal]

    def matches_for(self, proposal_id: str) -> tuple[MatchOutcome, ...]:
        return tuple(
            m for m in self.transcripts if proposal_id in (m.a, m.b)
        )

    def to_dict(self) -> dict:
        return {
            "ranking": list(self.ranking),
            "transcripts": [m.to_dict() for m in self.transcripts],
            "champion": self.champion,
            "stats": {k: v.to_dict() for k, v in self.stats.items()},
            "proposals": {k: p.to_dict() for k, p in self.proposals.items()},
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TournamentResult":
        return cls(
            ranking=tuple(raw["ranking"]),
            transcripts=tuple(MatchOutcome.from_dict(m) for m in raw["transcripts"]),
            champion=raw["champion"],
            stats={k: EntrantStats.from_dict(v) for k, v in raw["stats"].items()},
            proposals={k: BookProposal.from_dict(p) for k, p in raw["proposals"].items()},
        )


class PairwiseEvaluator(Protocol):
    def judge(self, a: BookProposal, b: BookProposal) -> MatchOutcome: ...


class MockEvaluator:
    """Deterministic pure comparator: lexicographically smaller title wins."""

    def judge(self, a: BookProposal, b: BookProposal) -> MatchOutcome:
        a_key = (a.working_title, a.id)
        b_key = (b.working_title, b.id)
        winner = a if a_key <= b_key else b
        side = "a" if winner is a else "b"
        judgments = tuple(
            CriterionJudgment(
                criterion=c,
                preferred=side,
                note=f"{winner.working_title!r} ranks first on {c.replace('_', ' ')}",
            )
            for c in CRITERIA
        )
        return MatchOutcome(
            a=a.id,
            b=b.id,
            winner=winner.id,
            rationale=(
                f"{winner.working_title!r} precedes the alternative in the "
                "deterministic title ordering"
            ),
            criterion_judgments=judgments,
        )


class GatewayEvaluator:
    """Evaluator that routes matchups through the model gateway.

    Responses must be JSON carrying winner, rationale, and all five criterion
    judgments; anything else raises EvaluationError with the raw text kept
    for audit.
    """

    def __init__(self, gateway, cfg, persona, *, max_tokens: int | None = None):
        self._gateway = gateway
        self._cfg = cfg
        self._persona = persona
        self._max_tokens = max_tokens

    def judge(self, a: BookProposal, b: BookProposal) -> MatchOutcome:
        from ..gateway import build_request
        from ..persona import TaskKind, assemble_prompt

        bundle = assemble_prompt(
            self._persona,
            TaskKind.CRITICAL,
            {"proposal_a": a.to_dict(), "proposal_b": b.to_dict()},
        )
        request = build_request(bundle, self._cfg, max_tokens=self._max_tokens)
        response = self._gateway.call(request)
        return parse_judgment(response.text, a, b)


def parse_judgment(text: str, a: BookProposal, b: BookProposal) -> MatchOutcome:
    """Parse an evaluator response into a MatchOutcome or fail with the raw text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raise EvaluationError(
            "evaluator response is not valid JSON", raw_response=text
        ) from None
    if not isinstance(raw, dict) or raw.get("winner") not in ("a", "b"):
        raise EvaluationError(
            "evaluator response missing a winner of 'a' or 'b'", raw_response=text
        )
    criteria = raw.get("criteria")
    if not isinstance(criteria, dict) or sorted(criteria) != sorted(CRITERIA):
        raise EvaluationError(
            "evaluator response must judge exactly the five criteria", raw_response=text
        )
    judgments = []
    for name in CRITERIA:
        entry = criteria[name]
        preferred = entry.get("preferred") if isinstance(entry, dict) else None
        if preferred not in ("a", "b"):
            raise EvaluationError(
                f"criterion {name!r} is missing a preferred side", raw_response=text
            )
        judgments.append(
            CriterionJudgment(name, preferred, entry.get("note", "") if isinstance(entry, dict) else "")
        )
    winner = a.id if raw["winner"] == "a" else b.id
    return MatchOutcome(
        a=a.id,
        b=b.id,
        winner=winner,
        rationale=str(raw.get("rationale", "")),
        criterion_judgments=tuple(judgments),
    )


def run_matchup(a: BookProposal, b: BookProposal, evaluator: PairwiseEvaluator) -> MatchOutcome:
    """Judge one pairing. The two proposals must be distinct."""
    if a.id == b.id:
        raise ContractError("a matchup needs two distinct proposals")
    return evaluator.judge(a, b)


def run_tournament(bracket: Bracket, evaluator: PairwiseEvaluator) -> TournamentResult:
    """Play the bracket to completion and rank every entrant.

    Ranking below the champion orders by elimination round (later is better),
    then match wins, then seed position. An evaluation error aborts the run
    with all completed transcripts preserved on the exception.
    """
    entrants = bracket.entrants
    seed_of = {pid: i for i, pid in enumerate(entrants)}
    wins = {pid: 0 for pid in entrants}
    eliminated_round: dict[str, int | None] = {pid: None for pid in entrants}
    transcripts: list[MatchOutcome] = []

    current = [pid for pid in entrants if pid not in bracket.byes]
    carried = [pid for pid in entrants if pid in bracket.byes]

    for plan in bracket.rounds:
        winners: list[str] = []
        for i in range(plan.match_count):
            a_id, b_id = current[2 * i], current[2 * i + 1]
            try:
                outcome = run_matchup(
                    bracket.proposals[a_id], bracket.proposals[b_id], evaluator
                )
            except EvaluationError as exc:
                raise TournamentAbortedError(
                    f"evaluation failed in round {plan.number}: {exc}",
                    transcripts=transcripts,
                    cause=exc,
                ) from exc
            outcome = MatchOutcome(
                a=outcome.a,
                b=outcome.b,
                winner=outcome.winner,
                rationale=outcome.rationale,
                criterion_judgments=outcome.criterion_judgments,
                round_number=plan.number,
            )
            transcripts.append(outcome)
            wins[outcome.winner] += 1
            eliminated_round[outcome.loser] = plan.number
            winners.append(outcome.winner)
        # byes join after round 1, ahead of the winners in seed order
        current = carried + winners
        carried = []

    champion = current[0]
    others = [pid for pid in entrants if pid != champion]
    others.sort(
        key=lambda pid: (
            -(eliminated_round[pid] or 0),
            -wins[pid],
            seed_of[pid],
        )
    )
    ranking = (champion, *others)
    stats = {
        pid: EntrantStats(
            seed_position=seed_of[pid],
            wins=wins[pid],
            eliminated_round=eliminated_round[pid],
        )
        for pid in entrants
    }
    return TournamentResult(
        ranking=ranking,
        transcripts=tuple(transcripts),
        champion=champion,
        stats=stats,
        proposals=dict(bracket.proposals),
    )
