"""Per-task sampling policy.

Creative tasks run at the imprint's configured temperature; analytical and
critical tasks are pinned to exactly 0.0 for reproducibility. Max-token
defaults per task kind are engine defaults that a config may override.
"""

from __future__ import annotations

from ..errors import UsageError
from ..persona import PromptBundle, TaskKind
from .models import ModelChain, PromptRequest

#: Engine defaults when the config does not override llm_config.max_tokens.
DEFAULT_MAX_TOKENS: dict[TaskKind, int] = {
    TaskKind.CREATIVE: 4096,
    TaskKind.ANALYTICAL: 2048,
    TaskKind.CRITICAL: 1024,
}


def _coerce_kind(task_kind: TaskKind | str) -> TaskKind:
    if isinstance(task_kind, TaskKind):
        return task_kind
    try:
        return TaskKind(task_kind)
    except ValueError:
        raise UsageError(
            f"unknown task kind {task_kind!r}; expected one of "
            f"{', '.join(k.value for k in TaskKind)}"
        ) from None


def temperature_for(task_kind: TaskKind | str, cfg) -> float:
    """The sampling temperature for a task under this imprint's config."""
    kind = _coerce_kind(task_kind)
    if kind is TaskKind.CREATIVE:
        return float(cfg["llm_config.temperature"])
    return 0.0


def max_tokens_for(task_kind: TaskKind | str, cfg) -> int:
    kind = _coerce_kind(task_kind)
    overrides = cfg.get("llm_config.max_tokens") or {}
    return int(overrides.get(kind.value, DEFAULT_MAX_TOKENS[kind]))


def build_request(
    bundle: PromptBundle,
    cfg,
    *,
    max_tokens: int | None = None,
    chain: ModelChain | None = None,
) -> PromptRequest:
    """Assemble a PromptRequest for a rendered bundle under the config's policy."""
    return PromptRequest(
        bundle=bundle,
        task_kind=bundle.task_kind,
        temperature=temperature_for(bundle.task_kind, cfg),
        max_tokens=max_tokens or max_tokens_for(bundle.task_kind, cfg),
        chain=chain or ModelChain.from_config(cfg),
    )
