"""Single-elimination bracket construction with seeded shuffles and byes."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import ContractError
from .proposals import BookProposal


@dataclass(frozen=True)
class RoundPlan:
    """One planned round: its 1-based number and how many matches it holds."""

    number: int
    match_count: int


@dataclass(frozen=True)
class Bracket:
    """A seeded single-elimination bracket.

    Entrants are proposal ids in seeded-shuffle order. When the entrant count
    is not a power of two, the first ``2**rounds - N`` seeded entrants receive
    byes and skip round 1.
    """

    entrants: tuple[str, ...]
    rounds: tuple[RoundPlan, ...]
    byes: frozenset[str]
    seed: int
    proposals: Mapping[str, BookProposal]

    @property
    def round_count(self) -> int:
        return len(self.rounds)

    def to_dict(self) -> dict:
        return {
            "entrants": list(self.entrants),
            "rounds": [{"number": r.number, "match_count": r.match_count} for r in self.rounds],
            "byes": sorted(self.byes),
            "seed": self.seed,
        }


def bracket_size(n: int) -> int:
    """Smallest power of two that holds n entrants."""
    size = 1
    while size < n:
        size *= 2
    return size


def seed_bracket(proposals: Sequence[BookProposal], rng_seed: int) -> Bracket:
    """Shuffle entrants with a seeded RNG and lay out rounds and byes.

    Identical (proposals, seed) inputs produce identical brackets. Byes go to
    the earliest positions of the seeded shuffle.
    """
    if not proposals:
        raise ContractError("cannot seed a bracket with zero proposals")
    ids = [p.id for p in proposals]
    if len(set(ids)) != len(ids):
        raise ContractError("duplicate proposal ids in bracket entrants")

    order = list(ids)
    random.Random(rng_seed).shuffle(order)

    n = len(order)
    size = bracket_size(n)
    round_count = size.bit_length() - 1  # log2 of the power of two
    bye_count = size - n if n > 1 else 0

    rounds: list[RoundPlan] = []
    if n > 1:
        rounds.append(RoundPlan(number=1, match_count=(n - bye_count) // 2))
        for r in range(2, round_count + 1):
            rounds.append(RoundPlan(number=r, match_count=size // (2**r)))

    return Bracket(
        entrants=tuple(order),
        rounds=tuple(rounds),
        byes=frozenset(order[:bye_count]),
        seed=rng_seed,
        proposals={p.id: p for p in proposals},
    )
