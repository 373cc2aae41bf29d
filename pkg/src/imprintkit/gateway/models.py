"""Gateway domain types: model chains, prompt requests, responses."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from ..errors import ContractError
from ..persona import PromptBundle, TaskKind


@dataclass(frozen=True)
class ModelSpec:
    """One provider-qualified model, e.g. ``gemini/gemini-2.5-pro``."""

    provider: str
    model_id: str

    def __post_init__(self):
        if not self.model_id:
            raise ContractError("model_id must be non-empty")

    @classmethod
    def from_string(cls, model_id: str) -> "ModelSpec":
        provider = model_id.split("/", 1)[0] if "/" in model_id else model_id
        return cls(provider=provider, model_id=model_id)


@dataclass(frozen=True)
class ModelChain:
    """Ordered fallback chain: primary model first, then alternates."""

    specs: tuple[ModelSpec, ...]

    def __post_init__(self):
        if not self.specs:
            raise ContractError("model chain must be non-empty")
        ids = [s.model_id for s in self.specs]
        if len(set(ids)) != len(ids):
            raise ContractError(f"model chain has duplicate model ids: {ids}")

    def __iter__(self):
        return iter(self.specs)

    def __len__(self):
        return len(self.specs)

    @classmethod
    def from_ids(cls, model_ids: Sequence[str]) -> "ModelChain":
        return cls(specs=tuple(ModelSpec.from_string(m) for m in model_ids))

    @classmethod
    def from_config(cls, cfg) -> "ModelChain":
        return cls.from_ids(cfg["llm_config.preferred_models"])


class AttemptOutcome(str, Enum):
    OK = "ok"
    TRANSPORT_ERROR = "transport_error"
    PROVIDER_ERROR = "provider_error"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Attempt:
    """One chain entry's final result for a call (internal retries folded in)."""

    model_id: str
    outcome: AttemptOutcome
    latency_s: float = 0.0
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "outcome": self.outcome.value,
            "latency_s": self.latency_s,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class PromptRequest:
    """A prompt plus its sampling policy and fallback chain."""

    bundle: PromptBundle
    task_kind: TaskKind
    temperature: float
    max_tokens: int
    chain: ModelChain

    def __post_init__(self):
        if not (0.0 <= self.temperature <= 2.0):
            raise ContractError(f"temperature must be in [0,2], got {self.temperature}")
        if self.max_tokens <= 0:
            raise ContractError(f"max_tokens must be positive, got {self.max_tokens}")


@dataclass(frozen=True)
class ModelResponse:
    text: str
    served_by: ModelSpec
    attempts: tuple[Attempt, ...] = field(default_factory=tuple)
    prompt_tokens: int | None = None
    completion_tokens: int | None = None
