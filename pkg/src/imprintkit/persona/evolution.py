"""Trait evolution from editorial decisions.

Each decision pulls the persona's traits toward a per-action signal by
exponential moving average with smoothing factor alpha. The action-to-signal
mapping and the default alpha ship as data (``data/trait_signals.json``) so
the evolution policy stays auditable and reversible.
"""

from __future__ import annotations

import json
from dataclasses import replace
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from ..errors import ContractError
from .model import TRAIT_NAMES, PublisherPersona, Traits


@lru_cache(maxsize=1)
def default_signal_config() -> dict:
    text = resources.files("imprintkit.persona").joinpath("data/trait_signals.json").read_text(
        "utf-8"
    )
    return json.loads(text)


def _clamp(x: float) -> float:
    return max(0.0, min(1.0, x))


def update_traits(
    persona: PublisherPersona,
    decisions: Iterable,
    *,
    alpha: float | None = None,
    signal_map: Mapping[str, Mapping[str, float]] | None = None,
) -> PublisherPersona:
    """Fold a decision sequence into new trait values.

    ``decisions`` may be EditorialDecision objects or anything exposing an
    ``action`` attribute/string. Traits stay clamped to [0, 1].
    """
    config = default_signal_config()
    if alpha is None:
        alpha = float(config["alpha"])
    if not (0.0 <= alpha <= 1.0):
        raise ContractError(f"alpha must be in [0,1], got {alpha}")
    if signal_map is None:
        signal_map = config["signals"]

    decisions = list(decisions)
    if not decisions:
        raise ContractError("decisions must be non-empty")

    values = persona.traits.as_dict()
    for decision in decisions:
        action = getattr(decision, "action", decision)
        action = getattr(action, "value", action)
        signals = signal_map.get(str(action), {})
        for trait, target in signals.items():
            if trait not in TRAIT_NAMES:
                raise ContractError(f"signal map names unknown trait {trait!r}")
            values[trait] = _clamp((1.0 - alpha) * values[trait] + alpha * float(target))

    return replace(persona, traits=Traits(**values))
