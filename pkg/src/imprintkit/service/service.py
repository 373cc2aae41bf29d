"""The imprint service: serialized commands over the event store.

One lock makes the store single-writer; API handlers and the CLI both come
through here. Reads serve from the in-memory state, which is only mutated by
applied events.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime, timedelta
from decimal import Decimal
from pathlib import Path
from typing import Sequence

from ..codex import QuotationRecord
from ..config import Level, ResolvedConfig, load_config_file, resolve
from ..errors import GateError, NotFoundError, StateError, TournamentAbortedError
from ..gateway import ApprovalRecord
from ..ideation import (
    DecisionAction,
    EditorialDecision,
    MockEvaluator,
    MockProposalGenerator,
    PairwiseEvaluator,
    ProposalGenerator,
    ProposalStatus,
)
from ..qa import (
    DistributionRow,
    SourceChecker,
    compute_price,
    export_distribution_csv,
    verify_all,
)
from .cycle import CycleArtifacts, CycleReport, run_cycle_stages
from .milestones import MilestoneTrigger, milestone_check
from .store import Clock, ImprintStore, utc_clock

DEFAULT_BASE_COST = "4.00"


@dataclass(frozen=True)
class ExportOutcome:
    title_id: str
    path: str
    row_count: int


class ImprintService:
    def __init__(
        self,
        store: ImprintStore,
        cfg: ResolvedConfig,
        persona,
        *,
        generator: ProposalGenerator | None = None,
        evaluator: PairwiseEvaluator | None = None,
        approve_token: str | None = None,
        clock: Clock = utc_clock,
    ):
        self.store = store
        self.cfg = cfg
        self.persona = persona
        self.generator = generator
        self.evaluator = evaluator or MockEvaluator()
        self.approve_token = approve_token
        self.clock = clock
        self._lock = threading.Lock()

    # -- construction ----------------------------------------------------------

    @classmethod
    def open(
        cls,
        store_dir: str | Path,
        *,
        seed: int = 0,
        approve_token: str | None = None,
        clock: Clock = utc_clock,
    ) -> "ImprintService":
        """Open a store directory laid out as ``config/{publisher,imprint,title}.json``
        plus the event log. Backends default to the deterministic mocks so the
        service runs fully offline."""
        store_dir = Path(store_dir)
        cfg = load_store_config(store_dir)
        from ..persona import PublisherPersona

        persona = PublisherPersona.from_config(cfg)
        store = ImprintStore(store_dir, clock=clock)
        return cls(
            store,
            cfg,
            persona,
            generator=MockProposalGenerator(seed=seed),
            evaluator=MockEvaluator(),
            approve_token=approve_token,
            clock=clock,
        )

    @property
    def state(self):
        return self.store.state

    # -- cycle -----------------------------------------------------------------

    def run_cycle(
        self, seed: int, *, batch_size: int | None = None, top_k: int | None = None
    ) -> CycleReport:
        """Run one full ideation cycle and persist every intermediate artifact.

        The cycle always stops at the review checkpoint; nothing is approved
        automatically. Stage errors mark the cycle aborted, keep the partial
        transcripts, and re-raise.
        """
        if self.generator is None:
            raise StateError("no proposal generator configured")
        with self._lock:
            number = self.state.counters["cycle"] + 1
            cycle_id = f"cycle-{number:04d}"
            tournament_id = f"tournament-{number:04d}"
            self.store.commit(
                "cycle_started", {"cycle_id": cycle_id, "number": number, "seed": seed}
            )
            try:
                artifacts = run_cycle_stages(
                    self.cfg,
                    self.persona,
                    self.state.archive,
                    seed,
                    generator=self.generator,
                    evaluator=self.evaluator,
                    cycle_id=cycle_id,
                    tournament_id=tournament_id,
                    batch_size=batch_size,
                    top_k=top_k,
                )
            except TournamentAbortedError as exc:
                self.store.commit(
                    "cycle_aborted",
                    {
                        "cycle_id": cycle_id,
                        "reason": str(exc),
                        "partial_transcripts": [m.to_dict() for m in exc.transcripts],
                    },
                )
                raise
            except Exception as exc:
                self.store.commit(
                    "cycle_aborted", {"cycle_id": cycle_id, "reason": str(exc)}
                )
                raise
            self._persist_artifacts(cycle_id, tournament_id, artifacts)
            return artifacts.report

    def _persist_artifacts(
        self, cycle_id: str, tournament_id: str, artifacts: CycleArtifacts
    ) -> None:
        for proposal in artifacts.kept:
            self.store.commit("proposal_added", {"proposal": proposal.to_dict()})
        if artifacts.discarded:
            self.store.commit(
                "proposals_deduplicated",
                {
                    "cycle_id": cycle_id,
                    "discarded": [p.to_dict() for p in artifacts.discarded],
                },
            )
        if artifacts.result is not None and artifacts.bracket is not None:
            self.store.commit(
                "tournament_recorded",
                {
                    "tournament_id": tournament_id,
                    "cycle_id": cycle_id,
                    "bracket": artifacts.bracket.to_dict(),
                    "result": artifacts.result.to_dict(),
                },
            )
            flagged = set(artifacts.packet.proposal_ids)
            for pid in artifacts.result.ranking:
                status = (
                    ProposalStatus.FLAGGED if pid in flagged else ProposalStatus.ARCHIVED
                )
                self.store.commit(
                    "proposal_status_set", {"proposal_id": pid, "status": status.value}
                )
            self.store.commit(
                "review_queued",
                {
                    "cycle_id": cycle_id,
                    "entries": [
                        {
                            "proposal_id": entry.proposal.id,
                            "tournament_id": tournament_id,
                            "rank": entry.rank,
                            "rationale": entry.rationale,
                        }
                        for entry in artifacts.packet.entries
                    ],
                },
            )
        self.store.commit("cycle_completed", {"report": artifacts.report.to_dict()})

    # -- editorial decisions ------------------------------------------------------

    def record_decision(
        self, proposal_id: str, action: DecisionAction | str, feedback: str, actor: str
    ) -> EditorialDecision:
        """Record a human decision; approval also schedules the project."""
        if isinstance(action, str):
            try:
                action = DecisionAction(action)
            except ValueError:
                raise NotFoundError(f"unknown decision action {action!r}") from None
        with self._lock:
            self.state.archive.get(proposal_id)  # not-found check
            decision = EditorialDecision(
                proposal_id=proposal_id,
                action=action,
                feedback=feedback,
                actor=actor,
                timestamp=self.clock(),
            )
            self.store.commit("decision_recorded", {"decision": decision.to_dict()})
            if action is DecisionAction.APPROVE:
                self._assign_project(proposal_id)
            return decision

    def _assign_project(self, proposal_id: str) -> None:
        proposal = self.state.archive.get(proposal_id)
        if proposal_id in self.state.archive.projects:
            raise StateError(f"proposal {proposal_id!r} is already scheduled")
        taken = {r.week_slot for r in self.state.archive.projects.values()}
        week = 1
        while week in taken:
            week += 1
        isbn_number = self.state.counters["isbn"] + 1
        body = f"97981{isbn_number:07d}"
        from ..qa import isbn13_check_digit

        isbn = body + isbn13_check_digit(body)
        project_id = f"proj-{proposal_id}"
        self.store.commit(
            "project_assigned",
            {
                "project": {
                    "project_id": project_id,
                    "proposal_id": proposal_id,
                    "week_slot": week,
                },
                "title_id": project_id,
                "title": proposal.working_title,
                "isbn": isbn,
                "isbn_number": isbn_number,
            },
        )

    # -- QA ---------------------------------------------------------------------

    def record_verification(
        self, title_id: str, quotations: Sequence[QuotationRecord], checker: SourceChecker
    ) -> list:
        if title_id not in self.state.catalog:
            raise NotFoundError(f"unknown title {title_id!r}")
        records = verify_all(list(quotations), checker)
        with self._lock:
            self.store.commit(
                "verification_recorded",
                {"title_id": title_id, "records": [r.to_dict() for r in records]},
            )
        return records

    # -- export --------------------------------------------------------------------

    def build_rows(self, title_ids: Sequence[str]) -> list[DistributionRow]:
        rows = []
        markets = self.cfg["pricing.markets"]
        markup = self.cfg["pricing.markup_pct"]
        discounts = self.cfg["pricing.wholesale_discount_pct"]
        base_cost = self.cfg.get("pricing.base_cost", DEFAULT_BASE_COST)
        for title_id in title_ids:
            entry = self.state.catalog.get(title_id)
            if entry is None:
                raise NotFoundError(f"unknown title {title_id!r}")
            prices = {}
            row_discounts = {}
            for market in markets:
                quote = compute_price(base_cost, markup, market, discounts[market])
                prices[market] = quote.list_price
                row_discounts[market] = Decimal(str(discounts[market]))
            rows.append(
                DistributionRow(
                    isbn=entry["isbn"],
                    title=entry["title"],
                    binding_type=self.cfg["book_defaults.binding_type"],
                    trim_size=self.cfg["book_defaults.trim_size"],
                    rendition=self.cfg["distribution.rendition"],
                    prices=prices,
                    discounts=row_discounts,
                )
            )
        return rows

    def export_title(self, title_id: str, *, approve_token: str, actor: str) -> ExportOutcome:
        """Gate-checked distribution export for one title.

        Order of refusals: bad token (gate), unverified quotations (QA),
        row validation errors. Only a clean, approved, QA-green title writes
        a feed file.
        """
        with self._lock:
            if title_id not in self.state.catalog:
                raise NotFoundError(f"unknown title {title_id!r}")
            if not self.approve_token or approve_token != self.approve_token:
                raise GateError("distribution export requires a valid approval token")
            if not actor:
                raise GateError("distribution export requires a named actor")
            blocking = self.state.qa_blocking(title_id)
            if blocking:
                raise StateError(
                    "title is not QA-ready: " + "; ".join(blocking)
                )
            rows = self.build_rows([title_id])
            approval = ApprovalRecord(actor=actor, timestamp=self.clock(), note=title_id)
            result = export_distribution_csv(rows, self.cfg, approval=approval)
            if not result.exported:
                raise StateError(
                    "row validation failed: "
                    + "; ".join(f.render() for f in result.report.errors)
                )
            path = self.store.exports_dir / f"{title_id}.csv"
            path.write_bytes(result.csv_text.encode("utf-8"))
            self.store.commit(
                "export_completed",
                {
                    "title_id": title_id,
                    "path": str(path),
                    "row_count": len(rows),
                    "approved_by": approval.to_dict(),
                },
            )
            return ExportOutcome(title_id=title_id, path=str(path), row_count=len(rows))

    # -- milestones / status -----------------------------------------------------

    def check_milestones(self, *, now: datetime | None = None) -> list[MilestoneTrigger]:
        with self._lock:
            stamp = now or self.clock()
            elapsed = self._elapsed(stamp)
            triggers = milestone_check(
                catalog_size=len(self.state.catalog),
                elapsed=elapsed,
                fired=self.state.fired_keys(),
                book_thresholds=self.cfg.get("automation.milestone_triggers", (10, 25, 50)),
                anniversary_years=self.cfg.get("automation.anniversary_triggers_years", (1, 2)),
                now=stamp,
            )
            for trigger in triggers:
                self.store.commit(
                    "milestone_fired", {"kind": trigger.kind, "value": trigger.value}
                )
            return triggers

    def _elapsed(self, now: datetime) -> timedelta:
        if self.state.first_event_ts is None:
            return timedelta(0)
        first = datetime.fromisoformat(self.state.first_event_ts)
        return now - first

    def status(self) -> dict:
        by_status: dict[str, int] = {}
        for proposal in self.state.archive.proposals.values():
            by_status[proposal.status.value] = by_status.get(proposal.status.value, 0) + 1
        return {
            "proposals": by_status,
            "decisions": len(self.state.archive.decisions),
            "cycles": len(self.state.cycle_order),
            "review_queue": len(self.state.review_queue),
            "catalog_size": len(self.state.catalog),
            "exports": len(self.state.exports),
            "milestones_fired": self.state.milestones_fired,
            "state_hash": self.state.state_hash(),
        }


def load_store_config(store_dir: str | Path) -> ResolvedConfig:
    """Resolve the three-level hierarchy from ``<store>/config/*.json``."""
    config_dir = Path(store_dir) / "config"
    publisher = load_config_file(config_dir / "publisher.json", Level.PUBLISHER)
    imprint = load_config_file(config_dir / "imprint.json", Level.IMPRINT)
    title_path = config_dir / "title.json"
    if title_path.exists():
        title = load_config_file(title_path, Level.TITLE)
    else:
        from ..config import ConfigNode

        title = ConfigNode(level=Level.TITLE)
    return resolve(publisher, imprint, title)
