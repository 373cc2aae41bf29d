"""Publisher personas and persona-conditioned prompt assembly."""

from .evolution import default_signal_config, update_traits
from .model import (
    TRAIT_NAMES,
    PromptBundle,
    PublisherPersona,
    RiskTolerance,
    TaskKind,
    Traits,
)
from .prompts import PAYLOAD_SHAPES, assemble_prompt, format_proposal, render_template

__all__ = [
    "PAYLOAD_SHAPES",
    "PromptBundle",
    "PublisherPersona",
    "RiskTolerance",
    "TRAIT_NAMES",
    "TaskKind",
    "Traits",
    "assemble_prompt",
    "default_signal_config",
    "format_proposal",
    "render_template",
    "update_traits",
]
