"""Proposal generation, tournament ranking, review flagging, and the archive."""

from .archive import ProposalArchive, assign_project, record_decision
from .bracket import Bracket, RoundPlan, bracket_size, seed_bracket
from .generate import (
    GatewayProposalGenerator,
    MockProposalGenerator,
    ProposalGenerator,
    filter_duplicates,
    generate_batch,
)
from .proposals import (
    STATUS_AFTER_ACTION,
    BookProposal,
    DecisionAction,
    EditorialDecision,
    ProjectRecord,
    ProposalStatus,
)
from .review import FlaggedEntry, ReviewPacket, flag_for_review
from .similarity import (
    DEFAULT_DUPLICATE_THRESHOLD,
    SimilarityScorer,
    similarity,
    token_jaccard,
)
from .tournament import (
    CRITERIA,
    CriterionJudgment,
    EntrantStats,
    GatewayEvaluator,
    MatchOutcome,
    MockEvaluator,
    PairwiseEvaluator,
    TournamentResult,
    parse_judgment,
    run_matchup,
    run_tournament,
)

__all__ = [
    "Bracket",
    "BookProposal",
    "CRITERIA",
    "CriterionJudgment",
    "DEFAULT_DUPLICATE_THRESHOLD",
    "DecisionAction",
    "EditorialDecision",
    "EntrantStats",
    "FlaggedEntry",
    "GatewayEvaluator",
    "GatewayProposalGenerator",
    "MatchOutcome",
    "MockEvaluator",
    "MockProposalGenerator",
    "PairwiseEvaluator",
    "ProjectRecord",
    "ProposalArchive",
    "ProposalGenerator",
    "ProposalStatus",
    "ReviewPacket",
    "RoundPlan",
    "STATUS_AFTER_ACTION",
    "SimilarityScorer",
    "TournamentResult",
    "assign_project",
    "bracket_size",
    "filter_duplicates",
    "flag_for_review",
    "generate_batch",
    "parse_judgment",
    "record_decision",
    "run_matchup",
    "run_tournament",
    "seed_bracket",
    "similarity",
    "token_jaccard",
]
