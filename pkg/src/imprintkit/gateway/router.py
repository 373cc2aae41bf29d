"""Fallback routing across the model chain."""

from __future__ import annotations

import time
from typing import Mapping

from ..errors import GatewayConfigError, GatewayExhaustedError
from .adapters import (
    Adapter,
    AdapterProviderError,
    AdapterTimeoutError,
    AdapterTransportError,
)
from .audit import AuditLog
from .models import Attempt, AttemptOutcome, ModelResponse, PromptRequest

#: Per-attempt wall-clock budget.
DEFAULT_TIMEOUT_S = 60.0


class ModelGateway:
    """Routes prompt requests across an ordered adapter chain.

    Adapters are tried in chain order with identical sampling parameters; the
    first success wins. Transport errors get one retry per adapter; provider
    errors and timeouts move straight to the next model. Every attempt is
    recorded in the response and in the audit log. Thread-safe as long as
    adapters are stateless or internally synchronized.
    """

    def __init__(
        self,
        backends: Mapping[str, Adapter],
        *,
        audit_log: AuditLog | None = None,
        timeout_s: float = DEFAULT_TIMEOUT_S,
    ):
        self._backends = dict(backends)
        self._audit = audit_log or AuditLog()
        self._timeout_s = timeout_s

    def call(self, request: PromptRequest) -> ModelResponse:
        missing = [s.model_id for s in request.chain if s.model_id not in self._backends]
        if missing:
            raise GatewayConfigError(
                f"no adapter registered for chain model(s): {', '.join(missing)}"
            )

        attempts: list[Attempt] = []
        for spec in request.chain:
            adapter = self._backends[spec.model_id]
            started = time.perf_counter()
            outcome, result, detail = self._try_adapter(adapter, request, spec)
            attempt = Attempt(
                model_id=spec.model_id,
                outcome=outcome,
                latency_s=round(time.perf_counter() - started, 6),
                detail=detail,
            )
            attempts.append(attempt)
            self._audit.record(
                event="model_attempt",
                model_id=spec.model_id,
                outcome=outcome.value,
                latency_s=attempt.latency_s,
                task_kind=request.task_kind.value,
                temperature=request.temperature,
                max_tokens=request.max_tokens,
                prompt_tokens=result.prompt_tokens if result else None,
                completion_tokens=result.completion_tokens if result else None,
            )
            if outcome is AttemptOutcome.OK and result is not None:
                return ModelResponse(
                    text=result.text,
                    served_by=spec,
                    attempts=tuple(attempts),
                    prompt_tokens=result.prompt_tokens,
                    completion_tokens=result.completion_tokens,
                )

        self._audit.record(
            event="chain_exhausted",
            chain=[s.model_id for s in request.chain],
            attempts=[a.to_dict() for a in attempts],
        )
        raise GatewayExhaustedError(
            f"all {len(attempts)} chain adapter(s) failed", attempts=tuple(attempts)
        )

    def _try_adapter(self, adapter, request, spec):
        """One chain entry: at most two tries, the second only after a
        transport error."""
        detail = ""
        for retry in (False, True):
            try:
                result = adapter.complete(request, spec, timeout_s=self._timeout_s)
                return AttemptOutcome.OK, result, detail
            except AdapterTransportError as exc:
                detail = str(exc)
                if retry:
                    return AttemptOutcome.TRANSPORT_ERROR, None, detail
            except AdapterTimeoutError as exc:
                return AttemptOutcome.TIMEOUT, None, str(exc)
            except AdapterProviderError as exc:
                return AttemptOutcome.PROVIDER_ERROR, None, str(exc)
        return AttemptOutcome.TRANSPORT_ERROR, None, detail
