"""Gateway: temperature policy, fallback routing, gates, audit."""

from __future__ import annotations

import pytest

from imprintkit.errors import (
    ContractError,
    GateError,
    GatewayConfigError,
    GatewayExhaustedError,
    UsageError,
)
from imprintkit.gateway import (
    AdapterProviderError,
    AdapterTransportError,
    AttemptOutcome,
    AuditLog,
    FailingAdapter,
    GateRequirement,
    MockAdapter,
    ModelChain,
    ModelGateway,
    PromptRequest,
    approve_gate,
    build_request,
    gate,
    max_tokens_for,
    require_approval,
    temperature_for,
)
from imprintkit.persona import PromptBundle, TaskKind

CHAIN = ModelChain.from_ids(["gemini/gemini-2.5-pro", "openai/gpt-5", "anthropic/claude"])


def _request(task_kind=TaskKind.ANALYTICAL, temperature=0.0, chain=CHAIN):
    bundle = PromptBundle(system_text="sys", user_text="user", task_kind=task_kind)
    return PromptRequest(
        bundle=bundle,
        task_kind=task_kind,
        temperature=temperature,
        max_tokens=256,
        chain=chain,
    )


class TestTemperaturePolicy:
    def test_creative_uses_configured_default(self, resolved_cfg):
        assert temperature_for(TaskKind.CREATIVE, resolved_cfg) == 0.6

    def test_analytical_and_critical_are_zero(self, resolved_cfg):
        assert temperature_for(TaskKind.ANALYTICAL, resolved_cfg) == 0.0
        assert temperature_for("critical", resolved_cfg) == 0.0

    def test_unknown_kind_is_usage_error(self, resolved_cfg):
        with pytest.raises(UsageError):
            temperature_for("whimsical", resolved_cfg)

    def test_max_tokens_defaults_by_kind(self, resolved_cfg):
        assert max_tokens_for(TaskKind.CREATIVE, resolved_cfg) == 4096
        assert max_tokens_for(TaskKind.CRITICAL, resolved_cfg) == 1024

    def test_build_request_uses_config_chain(self, resolved_cfg):
        bundle = PromptBundle(system_text="s", user_text="u", task_kind=TaskKind.CREATIVE)
        req = build_request(bundle, resolved_cfg)
        assert req.temperature == 0.6
        assert [s.model_id for s in req.chain] == [
            "gemini/gemini-2.5-pro",
            "openai/gpt-5",
            "anthropic/claude",
        ]


class TestModelChain:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(ContractError):
            ModelChain.from_ids(["a/x", "a/x"])

    def test_empty_chain_rejected(self):
        with pytest.raises(ContractError):
            ModelChain(specs=())

    def test_provider_parsed_from_prefix(self):
        spec = CHAIN.specs[0]
        assert spec.provider == "gemini"
        assert spec.model_id == "gemini/gemini-2.5-pro"


class TestFallbackRouting:
    def test_first_failure_falls_through_to_second(self):
        gw = ModelGateway(
            {
                "gemini/gemini-2.5-pro": FailingAdapter(AdapterTransportError),
                "openai/gpt-5": MockAdapter(seed=1),
                "anthropic/claude": MockAdapter(seed=1),
            }
        )
        response = gw.call(_request())
        assert response.served_by.model_id == "openai/gpt-5"
        assert len(response.attempts) == 2
        assert response.attempts[0].outcome is AttemptOutcome.TRANSPORT_ERROR
        assert response.attempts[1].outcome is AttemptOutcome.OK

    def test_two_failures_served_by_third_with_three_attempts(self):
        gw = ModelGateway(
            {
                "gemini/gemini-2.5-pro": FailingAdapter(AdapterTransportError),
                "openai/gpt-5": FailingAdapter(AdapterProviderError),
                "anthropic/claude": MockAdapter(seed=1),
            }
        )
        response = gw.call(_request())
        assert response.served_by.model_id == "anthropic/claude"
        assert [a.model_id for a in response.attempts] == [s.model_id for s in CHAIN]
        assert len(response.attempts) == 3

    def test_exhaustion_carries_all_attempts(self):
        gw = ModelGateway(
            {s.model_id: FailingAdapter(AdapterProviderError) for s in CHAIN}
        )
        with pytest.raises(GatewayExhaustedError) as exc:
            gw.call(_request())
        assert len(exc.value.attempts) == 3
        assert all(a.outcome is AttemptOutcome.PROVIDER_ERROR for a in exc.value.attempts)

    def test_missing_adapter_fails_before_any_attempt(self):
        spy = FailingAdapter(AdapterTransportError)
        gw = ModelGateway({"gemini/gemini-2.5-pro": spy})
        with pytest.raises(GatewayConfigError):
            gw.call(_request())
        assert spy.calls == 0

    def test_transport_error_gets_one_retry(self):
        flaky = FailingAdapter(AdapterTransportError, fail_times=1)
        gw = ModelGateway({s.model_id: flaky for s in CHAIN})
        response = gw.call(_request())
        # one transport failure, then success on the same adapter's retry
        assert flaky.calls == 2
        assert len(response.attempts) == 1
        assert response.attempts[0].outcome is AttemptOutcome.OK

    def test_provider_error_is_not_retried(self):
        hard = FailingAdapter(AdapterProviderError, fail_times=1)
        gw = ModelGateway(
            {
                "gemini/gemini-2.5-pro": hard,
                "openai/gpt-5": MockAdapter(seed=1),
                "anthropic/claude": MockAdapter(seed=1),
            }
        )
        gw.call(_request())
        assert hard.calls == 1

    def test_mock_adapter_is_deterministic_across_replays(self):
        request = _request()
        one = ModelGateway({s.model_id: MockAdapter(seed=7) for s in CHAIN}).call(request)
        two = ModelGateway({s.model_id: MockAdapter(seed=7) for s in CHAIN}).call(request)
        assert one.text == two.text
        different_seed = ModelGateway(
            {s.model_id: MockAdapter(seed=8) for s in CHAIN}
        ).call(request)
        assert different_seed.text != one.text

    def test_attempts_are_audited(self, tmp_path):
        audit = AuditLog(tmp_path / "audit.ndjson")
        gw = ModelGateway(
            {
                "gemini/gemini-2.5-pro": FailingAdapter(AdapterTransportError),
                "openai/gpt-5": MockAdapter(seed=1),
                "anthropic/claude": MockAdapter(seed=1),
            },
            audit_log=audit,
        )
        gw.call(_request())
        lines = (tmp_path / "audit.ndjson").read_text().strip().splitlines()
        assert len(lines) == 2
        import json

        records = [json.loads(line) for line in lines]
        assert records[0]["outcome"] == "transport_error"
        assert records[1]["outcome"] == "ok"
        assert all("timestamp" in r and "model_id" in r for r in records)


class TestGates:
    def test_distribution_submission_requires_human(self):
        requirement = gate("distribution_submission")
        assert requirement.requires_human is True
        assert requirement.satisfied is False

    def test_listed_low_stakes_kinds_pass(self):
        assert gate("matchup_evaluation").requires_human is False
        assert gate("matchup_evaluation").satisfied is True
        assert gate("draft_generation").requires_human is False

    def test_unknown_kind_fails_closed(self):
        assert gate("delete_catalog").requires_human is True

    def test_approval_satisfies_gate(self):
        requirement = approve_gate(gate("distribution_submission"), actor="editor", note="go")
        assert requirement.satisfied is True
        require_approval(requirement)  # must not raise

    def test_require_approval_raises_without_record(self):
        with pytest.raises(GateError):
            require_approval(gate("distribution_submission"))

    def test_anonymous_approval_rejected(self):
        with pytest.raises(GateError):
            approve_gate(gate("distribution_submission"), actor="")
