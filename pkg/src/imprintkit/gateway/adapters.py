"""Provider adapters: the pluggable last mile of a model call.

Adapters speak plain HTTP to provider endpoints; no provider SDK types leak
into the gateway contract. Credentials come from ``<PROVIDER>_API_KEY``
environment variables. Tests use the deterministic mock and scripted
adapters, which never touch the network.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from typing import Callable, Protocol

from ..errors import ImprintError
from .models import ModelSpec, PromptRequest


class AdapterTransportError(ImprintError):
    """Network-level failure: retriable once per adapter."""


class AdapterProviderError(ImprintError):
    """The provider answered with an error; not retriable."""


class AdapterTimeoutError(ImprintError):
    """The attempt exceeded its time budget."""


@dataclass(frozen=True)
class AdapterResult:
    text: str
    prompt_tokens: int | None = None
    completion_tokens: int | None = None


class Adapter(Protocol):
    def complete(
        self, request: PromptRequest, spec: ModelSpec, *, timeout_s: float
    ) -> AdapterResult: ...


class MockAdapter:
    """Deterministic offline adapter: a seeded hash-to-text function.

    The response is a pure function of (prompt content, sampling parameters,
    model id, seed), so replays are byte-identical.
    """

    def __init__(self, seed: int = 0):
        self._seed = seed

    def complete(
        self, request: PromptRequest, spec: ModelSpec, *, timeout_s: float = 60.0
    ) -> AdapterResult:
        material = "\x1f".join(
            [
                str(self._seed),
                spec.model_id,
                request.bundle.system_text,
                request.bundle.user_text,
                f"{request.temperature}",
                f"{request.max_tokens}",
            ]
        )
        digest = hashlib.sha256(material.encode("utf-8")).hexdigest()
        return AdapterResult(text=f"mock:{spec.model_id}:{digest[:16]}")


class ScriptedAdapter:
    """Returns caller-provided responses; for wiring tests end to end."""

    def __init__(self, script: Callable[[PromptRequest, ModelSpec], str] | str):
        self._script = script
        self.requests: list[PromptRequest] = []

    def complete(
        self, request: PromptRequest, spec: ModelSpec, *, timeout_s: float = 60.0
    ) -> AdapterResult:
        self.requests.append(request)
        if callable(self._script):
            return AdapterResult(text=self._script(request, spec))
        return AdapterResult(text=self._script)


class FailingAdapter:
    """Always raises the configured error; optionally only the first N calls."""

    def __init__(self, error: type[ImprintError] = AdapterTransportError, fail_times: int | None = None):
        self._error = error
        self._fail_times = fail_times
        self.calls = 0

    def complete(
        self, request: PromptRequest, spec: ModelSpec, *, timeout_s: float = 60.0
    ) -> AdapterResult:
        self.calls += 1
        if self._fail_times is None or self.calls <= self._fail_times:
            raise self._error(f"{spec.model_id} unavailable")
        return AdapterResult(text=f"recovered:{spec.model_id}")


def api_key_for(provider: str) -> str | None:
    """Read the provider credential from ``<PROVIDER>_API_KEY``."""
    return os.environ.get(f"{provider.upper().replace('-', '_')}_API_KEY")


class HttpAdapter:
    """Generic JSON-over-HTTP adapter.

    POSTs ``{model, system, prompt, temperature, max_tokens}`` to the endpoint
    and expects ``{"text": ..., "usage": {...}}`` back. Endpoint shape is kept
    deliberately plain; provider-specific translation belongs in the endpoint
    URL configuration, not in this package.
    """

    def __init__(self, endpoint: str, *, session=None):
        self._endpoint = endpoint
        self._session = session

    def complete(
        self, request: PromptRequest, spec: ModelSpec, *, timeout_s: float = 60.0
    ) -> AdapterResult:
        import requests

        session = self._session or requests
        key = api_key_for(spec.provider)
        headers = {"Authorization": f"Bearer {key}"} if key else {}
        payload = {
            "model": spec.model_id,
            "system": request.bundle.system_text,
            "prompt": request.bundle.user_text,
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        try:
            response = session.post(
                self._endpoint, json=payload, headers=headers, timeout=timeout_s
            )
        except requests.Timeout as exc:
            raise AdapterTimeoutError(str(exc)) from exc
        except requests.RequestException as exc:
            raise AdapterTransportError(str(exc)) from exc
        if response.status_code >= 400:
            raise AdapterProviderError(
                f"{spec.model_id} returned HTTP {response.status_code}"
            )
        body = response.json()
        usage = body.get("usage", {})
        return AdapterResult(
            text=body.get("text", ""),
            prompt_tokens=usage.get("prompt_tokens"),
            completion_tokens=usage.get("completion_tokens"),
        )
