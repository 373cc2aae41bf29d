"""Near-duplicate detection over proposals.

The default engine is token-set Jaccard over the lowercased, whitespace-split
concatenation of title, abstract, and outline. The scorer is pluggable so an
embedding-based engine can replace it without touching the dedup plumbing.
"""

from __future__ import annotations

from typing import Callable

from .proposals import BookProposal

#: A scorer maps two proposals to a similarity in [0, 1].
SimilarityScorer = Callable[[BookProposal, BookProposal], float]

#: Score at or above which a new proposal counts as a duplicate of an
#: archived one. Configurable per imprint via automation.duplicate_threshold.
DEFAULT_DUPLICATE_THRESHOLD = 0.8


def _tokens(text: str) -> frozenset[str]:
    return frozenset(text.lower().split())


def token_jaccard(a: str, b: str) -> float:
    """Jaccard similarity of the two texts' token sets; 1.0 for equal sets."""
    ta, tb = _tokens(a), _tokens(b)
    if not ta and not tb:
        return 1.0
    union = ta | tb
    return len(ta & tb) / len(union)


def _proposal_text(p: BookProposal) -> str:
    return " ".join([p.working_title, p.abstract, " ".join(p.outline)])


def similarity(a: BookProposal, b: BookProposal) -> float:
    """Symmetric similarity in [0, 1]; field-identical proposals score 1.0."""
    return token_jaccard(_proposal_text(a), _proposal_text(b))
