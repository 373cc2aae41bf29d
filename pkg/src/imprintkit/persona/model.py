"""Publisher persona types and persona-conditioned prompt bundles."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from ..errors import ContractError


class RiskTolerance(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @classmethod
    def parse(cls, value: str) -> "RiskTolerance":
        try:
            return cls(value.lower())
        except (ValueError, AttributeError):
            raise ContractError(f"unknown risk tolerance {value!r}") from None


class TaskKind(str, Enum):
    """The three model-task temperaments; creative runs warm, the rest cold."""

    CREATIVE = "creative"
    ANALYTICAL = "analytical"
    CRITICAL = "critical"


#: Canonical trait order, used everywhere traits are rendered or serialized.
TRAIT_NAMES = ("patience", "openness", "nuance_appreciation", "intellectual_rigor")


@dataclass(frozen=True)
class Traits:
    """Personality parameters, each within [0, 1]."""

    patience: float = 0.5
    openness: float = 0.5
    nuance_appreciation: float = 0.5
    intellectual_rigor: float = 0.5

    def __post_init__(self):
        for name in TRAIT_NAMES:
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ContractError(f"trait {name} must be in [0,1], got {v}")

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in TRAIT_NAMES}


@dataclass(frozen=True)
class PublisherPersona:
    """The editorial identity that conditions every generation and judgment."""

    name: str
    backstory: str = ""
    risk_tolerance: RiskTolerance = RiskTolerance.MEDIUM
    decision_style: str = "deliberate"
    hobby_horses: tuple[str, ...] = ()
    editorial_philosophy: str = ""
    traits: Traits = field(default_factory=Traits)

    def __post_init__(self):
        if not self.name:
            raise ContractError("persona name must be non-empty")

    def with_traits(self, traits: Traits) -> "PublisherPersona":
        return replace(self, traits=traits)

    @classmethod
    def from_config(cls, cfg) -> "PublisherPersona":
        """Build the persona from a resolved config's publisher_persona section."""
        traits_raw = cfg.get("publisher_persona.traits") or {}
        return cls(
            name=cfg["publisher_persona.persona_name"],
            backstory=cfg.get("publisher_persona.backstory", "") or "",
            risk_tolerance=RiskTolerance.parse(cfg["publisher_persona.risk_tolerance"]),
            decision_style=cfg.get("publisher_persona.decision_style") or "deliberate",
            hobby_horses=tuple(cfg.get("publisher_persona.hobby_horses") or ()),
            editorial_philosophy=cfg["publisher_persona.editorial_philosophy"],
            traits=Traits(**{name: traits_raw.get(name, 0.5) for name in TRAIT_NAMES}),
        )


@dataclass(frozen=True)
class PromptBundle:
    """A fully rendered system/user prompt pair for one model task."""

    system_text: str
    user_text: str
    task_kind: TaskKind
