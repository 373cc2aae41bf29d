"""Acceptance criteria for the primary component.

Each test exercises one criterion end to end at its stated tolerance and
prints a ``ACCEPTANCE <name>: PASS`` line (visible with ``pytest -s`` or in
captured output). Runtime budgets are asserted with a wall clock around the
work under test.
"""

from __future__ import annotations

import json
import math
import random
import shutil
import time
from datetime import datetime, timezone
from decimal import Decimal
from pathlib import Path

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from imprintkit.cli import main as cli_main
from imprintkit.codex import (
    QuotationRecord,
    build_pilsa_layout,
    CodexManifest,
    validate_manifest,
    PageKind,
    PageSide,
)
from imprintkit.config import Level, ResolvedConfig, load_config_file, resolve, validate
from imprintkit.errors import GatewayExhaustedError
from imprintkit.gateway import (
    AdapterProviderError,
    AdapterResult,
    AdapterTransportError,
    FailingAdapter,
    ModelChain,
    ModelGateway,
    PromptRequest,
    temperature_for,
)
from imprintkit.ideation import (
    BookProposal,
    MockEvaluator,
    MockProposalGenerator,
    flag_for_review,
    run_tournament,
    seed_bracket,
)
from imprintkit.persona import PromptBundle, PublisherPersona, TaskKind
from imprintkit.qa import (
    DistributionRow,
    FixtureChecker,
    compute_price,
    emit_distribution_csv,
    export_distribution_csv,
    parse_distribution_csv,
    validate_rows,
)
from imprintkit.report import Layer
from imprintkit.service import CycleReport, ImprintService, ImprintStore, create_app

FIXTURES = Path(__file__).parent / "fixtures" / "config"
FIXED_NOW = datetime(2025, 7, 18, 12, 0, 0, tzinfo=timezone.utc)


def _passed(name: str) -> None:
    print(f"ACCEPTANCE {name}: PASS")


def _mutate(cfg: ResolvedConfig, section: str, fname: str, value) -> ResolvedConfig:
    sections = {k: dict(v) for k, v in cfg.sections.items()}
    sections[section][fname] = value
    return ResolvedConfig(sections=sections, provenance=dict(cfg.provenance))


def test_criterion_config_fixture():
    """Three-file hierarchy resolves and validates; targeted mutations yield
    exactly one error in the right layer. Runtime < 1 s."""
    started = time.perf_counter()

    publisher = load_config_file(FIXTURES / "publisher.json", Level.PUBLISHER)
    imprint = load_config_file(FIXTURES / "imprint.json", Level.IMPRINT)
    title = load_config_file(FIXTURES / "title.json", Level.TITLE)
    assert publisher.findings == () and imprint.findings == () and title.findings == ()

    cfg = resolve(publisher, imprint, title)
    report = validate(cfg)
    assert report.passed and not report.errors, report.render_lines()

    # spot-check canonical values made it through resolution
    assert cfg["identity.imprint"] == "Xynapse Traces"
    assert cfg["llm_config.temperature"] == 0.6
    assert cfg["pricing.wholesale_discount_pct"]["US"] == 40
    assert cfg["pricing.markup_pct"] == 150
    assert cfg["book_defaults.trim_size"] == "6x9"

    discounts = dict(cfg["pricing.wholesale_discount_pct"], US=140)
    mutated = _mutate(cfg, "pricing", "wholesale_discount_pct", discounts)
    report = validate(mutated)
    assert len(report.errors) == 1
    assert report.errors[0].layer is Layer.SEMANTIC

    mismatched = _mutate(cfg, "book_defaults", "binding_type", "hardcover")
    report = validate(mismatched)
    assert len(report.errors) == 1
    assert report.errors[0].layer is Layer.BUSINESS_RULE

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"config fixture criterion took {elapsed:.2f}s"
    _passed("config-fixture")


def _proposals(n: int) -> list[BookProposal]:
    return [
        BookProposal(
            id=f"p{i:03d}",
            working_title=f"Title {i:03d}",
            abstract=f"Abstract {i}",
            target_audience="readers",
            estimated_scope="40k",
            outline=("One",),
            origin_cycle="c",
        )
        for i in range(n)
    ]


def test_criterion_tournament_laws():
    """200 random instances with N in [1, 64]: matches = N-1, rounds =
    ceil(log2 N), champion loss-free, every other entrant loses exactly once;
    N in [20, 30] gives 5 rounds and top-k in [3, 5]. Runtime < 5 s."""
    started = time.perf_counter()
    rng = random.Random(2025)
    evaluator = MockEvaluator()

    for case in range(200):
        n = rng.randint(1, 64)
        proposals = _proposals(n)
        bracket = seed_bracket(proposals, rng_seed=rng.randrange(10**6))
        expected_rounds = math.ceil(math.log2(n)) if n >= 2 else 0
        assert bracket.round_count == expected_rounds
        result = run_tournament(bracket, evaluator)
        assert len(result.transcripts) == n - 1
        losses = {p.id: 0 for p in proposals}
        for match in result.transcripts:
            losses[match.loser] += 1
        assert losses[result.champion] == 0
        for pid, count in losses.items():
            if pid != result.champion:
                assert count == 1

    for n in range(20, 31):
        proposals = _proposals(n)
        bracket = seed_bracket(proposals, rng_seed=7)
        assert bracket.round_count == 5
        result = run_tournament(bracket, evaluator)
        k = min(5, max(3, 5))
        packet = flag_for_review(result, min(k, n))
        assert 3 <= len(packet.entries) <= 5

    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"tournament laws criterion took {elapsed:.2f}s"
    _passed("tournament-laws")


@pytest.fixture
def resolved_fixture_cfg():
    publisher = load_config_file(FIXTURES / "publisher.json", Level.PUBLISHER)
    imprint = load_config_file(FIXTURES / "imprint.json", Level.IMPRINT)
    title = load_config_file(FIXTURES / "title.json", Level.TITLE)
    return resolve(publisher, imprint, title)


def _service(root: Path, cfg) -> ImprintService:
    store = ImprintStore(root, clock=lambda: FIXED_NOW)
    return ImprintService(
        store,
        cfg,
        PublisherPersona.from_config(cfg),
        generator=MockProposalGenerator(seed=77),
        evaluator=MockEvaluator(),
        approve_token="secret-token",
        clock=lambda: FIXED_NOW,
    )


def test_criterion_cycle_determinism(tmp_path, resolved_fixture_cfg):
    """run_cycle with mock backends and a fixed seed is byte-identical across
    two fresh runs and across a log-replay restart."""
    first = _service(tmp_path / "one", resolved_fixture_cfg).run_cycle(seed=123, batch_size=24)
    second = _service(tmp_path / "two", resolved_fixture_cfg).run_cycle(seed=123, batch_size=24)
    assert first.to_json().encode() == second.to_json().encode()

    reopened = ImprintStore(tmp_path / "one", clock=lambda: FIXED_NOW)
    replayed = CycleReport.from_dict(reopened.state.cycles[first.cycle_id]["report"])
    assert replayed.to_json().encode() == first.to_json().encode()
    assert reopened.rebuild_state().state_hash() == reopened.state.state_hash()
    _passed("cycle-determinism")


def _quotation(i: int, words: int = 8, verified: bool = True) -> QuotationRecord:
    text = " ".join(f"w{i}x{j}" for j in range(words))
    return QuotationRecord(
        text=text,
        author=f"Author {i}",
        source_work="Source",
        citation=f"Author {i}. 2001. Source.",
        verified=verified,
    )


def test_criterion_pilsa_layout():
    """100 quotations give a 200-page block with quotations all verso and 12
    message pages at recto ordinals 8..96; sizes 1..500 match a brute-force
    page walker. Runtime < 2 s."""
    started = time.perf_counter()
    messages = ("persist", "breathe", "attend")

    layout = build_pilsa_layout([_quotation(i) for i in range(100)], messages)
    assert len(layout.pages) == 200
    assert all(
        p.side is PageSide.VERSO for p in layout.pages if p.kind is PageKind.QUOTATION
    )
    message_rectos = [
        (p.folio - 1) // 2 for p in layout.pages if p.kind is PageKind.DOT_GRID_WITH_MESSAGE
    ]
    assert message_rectos == list(range(8, 97, 8))
    assert len(message_rectos) == 12

    def walk(n: int):
        # brute-force oracle, independent of the layout engine
        pages = []
        for i in range(1, n + 1):
            pages.append(("verso", 2 * i, "quotation"))
            pages.append(("recto", 2 * i + 1, "message" if i % 8 == 0 else "dot_grid"))
        return pages

    for n in range(1, 501):
        layout = build_pilsa_layout([_quotation(i) for i in range(n)], messages)
        expected = walk(n)
        assert len(layout.pages) == 2 * n
        for page, (side, folio, kind) in zip(layout.pages, expected):
            assert page.side.value == side
            assert page.folio == folio
            if kind == "quotation":
                assert page.kind is PageKind.QUOTATION
            elif kind == "message":
                assert page.kind is PageKind.DOT_GRID_WITH_MESSAGE
            else:
                assert page.kind is PageKind.DOT_GRID

    elapsed = time.perf_counter() - started
    assert elapsed < 2.0, f"pilsa layout criterion took {elapsed:.2f}s"
    _passed("pilsa-layout")


def test_criterion_quotation_word_limit():
    """A 250-word quotation is rejected at validation; 249 words pass."""
    manifest = CodexManifest.pilsa(expected_quotations=1)
    under = _quotation(0, words=249)
    assert under.word_count == 249
    assert validate_manifest(manifest, [under]).passed

    over = _quotation(0, words=250)
    assert over.word_count == 250
    report = validate_manifest(manifest, [over])
    assert not report.passed
    assert any("250" in f.message for f in report.errors)
    _passed("quotation-word-limit")


class _RecordingAdapter:
    def __init__(self):
        self.seen: list[tuple[float, int]] = []

    def complete(self, request: PromptRequest, spec, *, timeout_s: float = 60.0):
        self.seen.append((request.temperature, request.max_tokens))
        return AdapterResult(text=f"ok:{spec.model_id}")


def test_criterion_gateway_fallback(resolved_fixture_cfg):
    """First two adapters fail, the third serves with a 3-entry attempts list
    and identical sampling parameters; full-chain failure exhausts; the
    temperature policy matches the imprint config."""
    chain = ModelChain.from_config(resolved_fixture_cfg)
    assert len(chain) == 3

    recorder = _RecordingAdapter()
    first_fail = FailingAdapter(AdapterTransportError)
    second_fail = FailingAdapter(AdapterProviderError)
    gateway = ModelGateway(
        {
            chain.specs[0].model_id: first_fail,
            chain.specs[1].model_id: second_fail,
            chain.specs[2].model_id: recorder,
        }
    )
    request = PromptRequest(
        bundle=PromptBundle(system_text="s", user_text="u", task_kind=TaskKind.ANALYTICAL),
        task_kind=TaskKind.ANALYTICAL,
        temperature=0.0,
        max_tokens=512,
        chain=chain,
    )
    response = gateway.call(request)
    assert response.served_by.model_id == chain.specs[2].model_id
    assert len(response.attempts) == 3
    assert [a.model_id for a in response.attempts] == [s.model_id for s in chain]
    # identical sampling parameters on every attempt: the request is immutable
    # and the serving adapter saw exactly the request's parameters
    assert recorder.seen == [(0.0, 512)]

    exhausted = ModelGateway(
        {s.model_id: FailingAdapter(AdapterProviderError) for s in chain}
    )
    with pytest.raises(GatewayExhaustedError) as exc:
        exhausted.call(request)
    assert len(exc.value.attempts) == 3

    assert temperature_for(TaskKind.CREATIVE, resolved_fixture_cfg) == 0.6
    assert temperature_for(TaskKind.ANALYTICAL, resolved_fixture_cfg) == 0.0
    _passed("gateway-fallback")


VALID_ISBN = "9780306406157"


def _row(binding="paperback"):
    markets = ("US", "UK", "EU", "CA", "AU")
    return DistributionRow(
        isbn=VALID_ISBN,
        title="Tracing Synapses",
        binding_type=binding,
        trim_size="6x9",
        rendition="POD: Standard B&W 6x9 Perfect Bound on White",
        prices={m: Decimal("10.00") for m in markets},
        discounts={m: Decimal("40") for m in markets},
    )


def test_criterion_distribution_incident_regression(resolved_fixture_cfg):
    """The wrong-binding row set is refused with a binding-column finding;
    the corrected set exports; parse(emit(rows)) round-trips exactly."""
    from imprintkit.gateway import ApprovalRecord

    approval = ApprovalRecord(actor="editor", timestamp=FIXED_NOW, note="tranche 1")

    wrong = [_row(binding="hardcover")]
    result = export_distribution_csv(wrong, resolved_fixture_cfg, approval=approval)
    assert not result.exported
    assert any(
        "binding_type" in f.path and f.severity.value == "error"
        for f in result.report.findings
    )

    corrected = [_row()]
    result = export_distribution_csv(corrected, resolved_fixture_cfg, approval=approval)
    assert result.exported
    assert result.report.passed
    assert validate_rows(corrected, resolved_fixture_cfg).passed

    text = emit_distribution_csv(corrected, resolved_fixture_cfg)
    assert parse_distribution_csv(text, resolved_fixture_cfg) == corrected
    _passed("distribution-incident-regression")


def test_criterion_gate_soundness(tmp_path, resolved_fixture_cfg):
    """Export without a human approval record is impossible via both CLI and
    API; no proposal reaches approved status without a logged decision."""
    # API path
    service = _service(tmp_path / "gate", resolved_fixture_cfg)
    report = service.run_cycle(seed=9, batch_size=8)
    client = TestClient(create_app(service), raise_server_exceptions=False)
    pid = report.flagged_proposal_ids[0]
    client.post(
        f"/api/proposals/{pid}/decision",
        json={"action": "approve", "feedback": "", "actor": "editor"},
    )
    title_id = next(iter(service.state.catalog))
    denied = client.post(f"/api/export/{title_id}", json={"actor": "editor"})
    assert denied.status_code == 403
    denied = client.post(
        f"/api/export/{title_id}", json={"approve_token": "wrong", "actor": "editor"}
    )
    assert denied.status_code == 403
    assert not (tmp_path / "gate" / "exports" / f"{title_id}.csv").exists()

    # CLI path
    store = tmp_path / "cli-store"
    (store / "config").mkdir(parents=True)
    for name in ("publisher.json", "imprint.json", "title.json"):
        shutil.copy(FIXTURES / name, store / "config" / name)
    runner = CliRunner()
    out = runner.invoke(
        cli_main, ["ideate", "run", "--store", str(store), "--seed", "4", "--batch", "8"]
    )
    cli_pid = json.loads(out.output)["flagged_proposal_ids"][0]
    runner.invoke(cli_main, ["decide", "--store", str(store), cli_pid, "--action", "approve"])
    refused = runner.invoke(
        cli_main,
        ["export", "csv", "--store", str(store), f"proj-{cli_pid}", "--actor", "editor"],
        env={"IMPRINT_APPROVE_TOKEN": ""},
    )
    assert refused.exit_code != 0
    assert not (store / "exports" / f"proj-{cli_pid}.csv").exists()

    # approval-before-status invariant over the whole event log
    decided = {d.proposal_id for d in service.state.archive.decisions}
    for proposal in service.state.archive.proposals.values():
        if proposal.status.value == "approved":
            assert proposal.id in decided
    _passed("gate-soundness")


def test_criterion_pricing():
    """(base 4.00, markup 150, discount 40) lists at 10.00 and nets 6.00;
    wholesale never exceeds list across the whole discount range."""
    quote = compute_price("4.00", 150, "US", 40)
    assert quote.list_price == Decimal("10.00")
    assert quote.wholesale_receipt == Decimal("6.00")

    rng = random.Random(7)
    for _ in range(500):
        base = Decimal(rng.randrange(0, 50000)) / 100
        markup = Decimal(rng.randrange(0, 4000)) / 10
        discount = Decimal(rng.randrange(0, 1001)) / 10
        q = compute_price(base, markup, "US", discount)
        assert q.wholesale_receipt <= q.list_price
        if discount == 0:
            assert q.wholesale_receipt == q.list_price
    _passed("pricing")
