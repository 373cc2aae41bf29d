"""Multi-provider model gateway: fallback routing, sampling policy, human gates."""

from .adapters import (
    Adapter,
    AdapterProviderError,
    AdapterResult,
    AdapterTimeoutError,
    AdapterTransportError,
    FailingAdapter,
    HttpAdapter,
    MockAdapter,
    ScriptedAdapter,
    api_key_for,
)
from .audit import AuditLog
from .gate import (
    GATE_POLICY,
    ApprovalRecord,
    GateRequirement,
    approve_gate,
    gate,
    require_approval,
)
from .models import (
    Attempt,
    AttemptOutcome,
    ModelChain,
    ModelResponse,
    ModelSpec,
    PromptRequest,
)
from .policy import DEFAULT_MAX_TOKENS, build_request, max_tokens_for, temperature_for
from .router import DEFAULT_TIMEOUT_S, ModelGateway

__all__ = [
    "Adapter",
    "AdapterProviderError",
    "AdapterResult",
    "AdapterTimeoutError",
    "AdapterTransportError",
    "ApprovalRecord",
    "Attempt",
    "AttemptOutcome",
    "AuditLog",
    "DEFAULT_MAX_TOKENS",
    "DEFAULT_TIMEOUT_S",
    "FailingAdapter",
    "GATE_POLICY",
    "GateRequirement",
    "HttpAdapter",
    "MockAdapter",
    "ModelChain",
    "ModelGateway",
    "ModelResponse",
    "ModelSpec",
    "PromptRequest",
    "ScriptedAdapter",
    "api_key_for",
    "approve_gate",
    "build_request",
    "gate",
    "max_tokens_for",
    "require_approval",
    "temperature_for",
]
