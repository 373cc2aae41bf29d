"""Proposal batch generation with archive-aware deduplication."""

from __future__ import annotations

import hashlib
import json
import random
from typing import Protocol, Sequence

from ..errors import EvaluationError, UsageError
from .archive import ProposalArchive
from .proposals import BookProposal
from .similarity import DEFAULT_DUPLICATE_THRESHOLD, SimilarityScorer, similarity

_TOPICS = (
    "Quantum", "Neural", "Synthetic", "Orbital", "Genomic", "Cryptographic",
    "Planetary", "Cognitive", "Autonomous", "Resilient",
)
_SUBJECTS = (
    "Survival", "Memory", "Governance", "Computation", "Migration", "Longevity",
    "Infrastructure", "Attention",
)
_FORMS = ("Handbook", "Atlas", "Primer", "Field Guide", "Almanac", "Casebook")
_THEMES = (
    "entropy", "protocols", "resilience", "markets", "ethics", "simulation",
    "redundancy", "emergence", "forecasting", "verification", "stewardship",
    "thresholds", "feedback", "scarcity", "adaptation", "coordination",
    "legibility", "robustness", "drift", "provenance", "latency", "consensus",
    "sensing", "repair", "translation", "archives", "risk", "metabolism",
    "topology", "incentives", "interfaces", "memory", "autonomy", "failure",
    "recovery", "signals", "boundaries", "inheritance", "plasticity", "trust",
)


class ProposalGenerator(Protocol):
    def generate(
        self, n: int, *, cycle_id: str, avoid: Sequence[str] = ()
    ) -> list[BookProposal]: ...


class MockProposalGenerator:
    """Deterministic offline generator: a pure function of (seed, n, cycle_id).

    Titles are sampled without replacement from a fixed vocabulary, so every
    batch is distinct and reproducible.
    """

    def __init__(self, seed: int):
        self._seed = seed

    def generate(
        self, n: int, *, cycle_id: str, avoid: Sequence[str] = ()
    ) -> list[BookProposal]:
        combos = [
            (t, s, f) for t in _TOPICS for s in _SUBJECTS for f in _FORMS
        ]
        if n > len(combos):
            raise UsageError(f"mock generator can produce at most {len(combos)} proposals")
        # stable across processes, unlike hash() of a (seed, cycle_id) tuple
        digest = hashlib.sha256(f"{self._seed}:{cycle_id}".encode("utf-8")).digest()
        rng = random.Random(int.from_bytes(digest[:8], "big"))
        picks = rng.sample(combos, n)
        proposals = []
        for i, (topic, subject, form) in enumerate(picks):
            title = f"The {topic} {subject} {form}"
            # per-proposal theme words keep distinct proposals dissimilar
            # (well under the duplicate threshold) without losing determinism
            w = rng.sample(_THEMES, 5)
            proposals.append(
                BookProposal(
                    id=f"{cycle_id}-p{i:02d}",
                    working_title=title,
                    abstract=(
                        f"{subject} under {topic.lower()} conditions: "
                        f"{w[0]}, {w[1]}, {w[2]}, {w[3]}, and {w[4]}."
                    ),
                    target_audience="Academic and Professional",
                    estimated_scope=f"{rng.randrange(30, 61)}k words",
                    outline=(
                        f"Why {subject} Now",
                        f"{topic} Foundations",
                        f"{w[0].title()} and {w[1].title()}",
                        f"{w[2].title()} in Practice",
                        "Open Problems",
                    ),
                    origin_cycle=cycle_id,
                )
            )
        return proposals


class GatewayProposalGenerator:
    """Production generator: creative-task prompt through the model gateway."""

    def __init__(self, gateway, cfg, persona, *, max_tokens: int | None = None):
        self._gateway = gateway
        self._cfg = cfg
        self._persona = persona
        self._max_tokens = max_tokens

    def generate(
        self, n: int, *, cycle_id: str, avoid: Sequence[str] = ()
    ) -> list[BookProposal]:
        from ..gateway import build_request
        from ..persona import TaskKind, assemble_prompt

        bundle = assemble_prompt(
            self._persona,
            TaskKind.CREATIVE,
            {
                "count": n,
                "charter": self._cfg.get("wizard.charter", ""),
                "genres": self._cfg.get("publishing_focus.primary_genres", ()),
                "audience": self._cfg.get("publishing_focus.target_audience", ""),
                "avoid": list(avoid),
            },
        )
        request = build_request(bundle, self._cfg, max_tokens=self._max_tokens)
        response = self._gateway.call(request)
        return _parse_proposals(response.text, n, cycle_id)


def _parse_proposals(text: str, n: int, cycle_id: str) -> list[BookProposal]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raise EvaluationError("generator response is not valid JSON", raw_response=text) from None
    if not isinstance(raw, list):
        raise EvaluationError("generator response must be a JSON array", raw_response=text)
    proposals = []
    for i, item in enumerate(raw[:n]):
        proposals.append(
            BookProposal(
                id=f"{cycle_id}-p{i:02d}",
                working_title=str(item.get("working_title", "")),
                abstract=str(item.get("abstract", "")),
                target_audience=str(item.get("target_audience", "")),
                estimated_scope=str(item.get("estimated_scope", "")),
                outline=tuple(str(s) for s in item.get("outline", ())),
                origin_cycle=cycle_id,
            )
        )
    return proposals


def filter_duplicates(
    proposals: Sequence[BookProposal],
    archive: ProposalArchive,
    *,
    threshold: float = DEFAULT_DUPLICATE_THRESHOLD,
    scorer: SimilarityScorer = similarity,
) -> tuple[list[BookProposal], list[BookProposal]]:
    """Split a batch into (kept, discarded) against archived rejected proposals.

    A proposal is discarded when its similarity to any rejected archive entry
    meets the duplicate threshold.
    """
    rejected = list(archive.rejected())
    kept: list[BookProposal] = []
    discarded: list[BookProposal] = []
    for proposal in proposals:
        if any(scorer(proposal, old) >= threshold for old in rejected):
            discarded.append(proposal)
        else:
            kept.append(proposal)
    return kept, discarded


def generate_batch(
    cfg,
    persona,
    archive: ProposalArchive,
    n: int,
    generator: ProposalGenerator,
    *,
    cycle_id: str = "adhoc",
    threshold: float | None = None,
    scorer: SimilarityScorer = similarity,
) -> list[BookProposal]:
    """Generate up to n proposals, dropping near-duplicates of rejected ideas.

    Rejection feedback from the archive rides along as the generator's
    avoid-list.
    """
    if n < 1:
        raise UsageError(f"batch size must be at least 1, got {n}")
    if threshold is None:
        threshold = cfg.get("automation.duplicate_threshold", DEFAULT_DUPLICATE_THRESHOLD)
    batch = generator.generate(n, cycle_id=cycle_id, avoid=archive.rejection_feedback())
    kept, _ = filter_duplicates(batch, archive, threshold=threshold, scorer=scorer)
    return kept
