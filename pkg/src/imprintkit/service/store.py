"""Event-sourced persistence for the imprint.

All state lives in one append-only newline-delimited JSON event log plus a
rebuildable snapshot; replaying the log from zero always reconstructs the
same state (hash-comparable). Apply handlers are pure appliers: commands
validate and compute up front, events record the results, replay never
re-validates.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterator

from ..errors import StateError
from ..ideation import (
    BookProposal,
    EditorialDecision,
    ProjectRecord,
    ProposalArchive,
    ProposalStatus,
    STATUS_AFTER_ACTION,
)

Clock = Callable[[], datetime]


def utc_clock() -> datetime:
    return datetime.now(timezone.utc)


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class EventLog:
    """Append-only NDJSON event log with monotonically increasing sequence."""

    def __init__(self, path: str | Path, *, clock: Clock = utc_clock):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._clock = clock
        self._next_seq = sum(1 for _ in self.iter_events()) + 1 if self.path.exists() else 1

    def append(self, event_type: str, payload: dict) -> dict:
        event = {
            "seq": self._next_seq,
            "ts": self._clock().isoformat(),
            "type": event_type,
            **payload,
        }
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(canonical_json(event) + "\n")
        self._next_seq += 1
        return event

    def iter_events(self) -> Iterator[dict]:
        if not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield json.loads(line)


class ImprintState:
    """The state machine the event log drives."""

    def __init__(self):
        self.archive = ProposalArchive()
        self.review_queue: list[dict] = []
        self.tournaments: dict[str, dict] = {}
        self.cycles: dict[str, dict] = {}
        self.cycle_order: list[str] = []
        self.catalog: dict[str, dict] = {}
        self.qa_records: dict[str, list[dict]] = {}
        self.exports: dict[str, dict] = {}
        self.milestones_fired: list[dict] = []
        self.counters: dict[str, int] = {"cycle": 0, "isbn": 0}
        self.first_event_ts: str | None = None

    # -- event application ---------------------------------------------------

    def apply(self, event: dict) -> None:
        handler = getattr(self, f"_apply_{event['type']}", None)
        if handler is None:
            raise StateError(f"replay hit unknown event type {event['type']!r}")
        if self.first_event_ts is None:
            self.first_event_ts = event.get("ts")
        handler(event)

    def _apply_cycle_started(self, event: dict) -> None:
        cycle_id = event["cycle_id"]
        self.counters["cycle"] = max(self.counters["cycle"], int(event["number"]))
        self.cycles[cycle_id] = {"seed": event["seed"], "status": "running"}
        self.cycle_order.append(cycle_id)

    def _apply_proposal_added(self, event: dict) -> None:
        proposal = BookProposal.from_dict(event["proposal"])
        self.archive.proposals[proposal.id] = proposal

    def _apply_proposals_deduplicated(self, event: dict) -> None:
        self.cycles[event["cycle_id"]]["discarded"] = event["discarded"]

    def _apply_tournament_recorded(self, event: dict) -> None:
        self.tournaments[event["tournament_id"]] = {
            "cycle_id": event["cycle_id"],
            "bracket": event["bracket"],
            "result": event["result"],
        }
        self.archive.tournament_ids.append(event["tournament_id"])

    def _apply_proposal_status_set(self, event: dict) -> None:
        pid = event["proposal_id"]
        self.archive.proposals[pid] = self.archive.proposals[pid].with_status(
            ProposalStatus(event["status"])
        )

    def _apply_review_queued(self, event: dict) -> None:
        self.review_queue.extend(event["entries"])

    def _apply_cycle_completed(self, event: dict) -> None:
        cycle_id = event["report"]["cycle_id"]
        self.cycles[cycle_id].update(status="completed", report=event["report"])

    def _apply_cycle_aborted(self, event: dict) -> None:
        self.cycles[event["cycle_id"]].update(
            status="aborted",
            reason=event["reason"],
            partial_transcripts=event.get("partial_transcripts", []),
        )

    def _apply_decision_recorded(self, event: dict) -> None:
        decision = EditorialDecision.from_dict(event["decision"])
        self.archive.decisions.append(decision)
        pid = decision.proposal_id
        self.archive.proposals[pid] = self.archive.proposals[pid].with_status(
            STATUS_AFTER_ACTION[decision.action]
        )
        self.review_queue = [e for e in self.review_queue if e["proposal_id"] != pid]

    def _apply_project_assigned(self, event: dict) -> None:
        record = ProjectRecord.from_dict(event["project"])
        self.archive.projects[record.proposal_id] = record
        self.counters["isbn"] = max(self.counters["isbn"], int(event["isbn_number"]))
        self.catalog[event["title_id"]] = {
            "title_id": event["title_id"],
            "proposal_id": record.proposal_id,
            "title": event["title"],
            "isbn": event["isbn"],
            "week_slot": record.week_slot,
        }

    def _apply_verification_recorded(self, event: dict) -> None:
        self.qa_records[event["title_id"]] = event["records"]

    def _apply_export_completed(self, event: dict) -> None:
        self.exports[event["title_id"]] = {
            "path": event["path"],
            "row_count": event["row_count"],
            "approved_by": event["approved_by"],
        }

    def _apply_milestone_fired(self, event: dict) -> None:
        self.milestones_fired.append(
            {"kind": event["kind"], "value": event["value"], "fired_at": event["ts"]}
        )

    # -- projections -----------------------------------------------------------

    def fired_keys(self) -> set[tuple[str, int]]:
        return {(m["kind"], int(m["value"])) for m in self.milestones_fired}

    def qa_blocking(self, title_id: str) -> list[str]:
        """Human-readable reasons a title cannot be exported yet."""
        records = self.qa_records.get(title_id)
        if not records:
            return ["no quotation verification has been recorded for this title"]
        blockers = []
        for record in records:
            if record["status"] != "verified":
                blockers.append(
                    f"quotation {record['quotation_index']} is {record['status']}"
                )
        return blockers

    def qa_ready(self, title_id: str) -> bool:
        return not self.qa_blocking(title_id)

    def to_dict(self) -> dict:
        return {
            "proposals": {pid: p.to_dict() for pid, p in self.archive.proposals.items()},
            "decisions": [d.to_dict() for d in self.archive.decisions],
            "tournament_ids": list(self.archive.tournament_ids),
            "projects": {pid: r.to_dict() for pid, r in self.archive.projects.items()},
            "review_queue": self.review_queue,
            "tournaments": self.tournaments,
            "cycles": self.cycles,
            "cycle_order": self.cycle_order,
            "catalog": self.catalog,
            "qa_records": self.qa_records,
            "exports": self.exports,
            "milestones_fired": self.milestones_fired,
            "counters": self.counters,
            "first_event_ts": self.first_event_ts,
        }

    def state_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.to_dict()).encode("utf-8")).hexdigest()


class ImprintStore:
    """Event log plus derived in-memory state and snapshot files."""

    def __init__(self, root: str | Path, *, clock: Clock = utc_clock):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.clock = clock
        self.log = EventLog(self.root / "events.ndjson", clock=clock)
        self.state = ImprintState()
        for event in self.log.iter_events():
            self.state.apply(event)

    def commit(self, event_type: str, payload: dict) -> dict:
        event = self.log.append(event_type, payload)
        self.state.apply(event)
        return event

    def snapshot_path(self) -> Path:
        return self.root / "snapshot.json"

    def write_snapshot(self) -> Path:
        path = self.snapshot_path()
        path.write_text(
            canonical_json({"state": self.state.to_dict(), "hash": self.state.state_hash()})
            + "\n",
            encoding="utf-8",
        )
        return path

    def rebuild_state(self) -> ImprintState:
        """Replay the log from zero into a fresh state (totality check)."""
        state = ImprintState()
        for event in self.log.iter_events():
            state.apply(event)
        return state

    @property
    def exports_dir(self) -> Path:
        path = self.root / "exports"
        path.mkdir(parents=True, exist_ok=True)
        return path
