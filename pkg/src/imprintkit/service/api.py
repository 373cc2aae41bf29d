"""HTTP API for the editorial review loop.

Every mutating endpoint writes through the service's serialized command
stream (and therefore the append-only event log); distribution endpoints
enforce the human gate and answer 403 without a valid approval token.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..errors import (
    ContractError,
    GateError,
    ImprintError,
    NotFoundError,
    StateError,
    UsageError,
)
from .service import ImprintService


class DecisionBody(BaseModel):
    action: str
    feedback: str = ""
    actor: str = "editor"


class ExportBody(BaseModel):
    approve_token: str = ""
    actor: str = ""


_STATUS_FOR = (
    (NotFoundError, 404),
    (GateError, 403),
    (StateError, 409),
    (ContractError, 422),
    (UsageError, 422),
)


def create_app(service: ImprintService) -> FastAPI:
    app = FastAPI(title="imprint review service", version="0.1.0")

    @app.exception_handler(ImprintError)
    async def imprint_error_handler(request: Request, exc: ImprintError):
        status = next((code for etype, code in _STATUS_FOR if isinstance(exc, etype)), 500)
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/api/health")
    def health():
        return {"status": "ok", "state_hash": service.state.state_hash()}

    @app.get("/api/queue")
    def queue():
        items = []
        for entry in sorted(service.state.review_queue, key=lambda e: e["rank"]):
            proposal = service.state.archive.get(entry["proposal_id"])
            tournament = service.state.tournaments.get(entry["tournament_id"], {})
            transcripts = [
                m
                for m in tournament.get("result", {}).get("transcripts", [])
                if proposal.id in (m["a"], m["b"])
            ]
            items.append(
                {
                    "proposal": proposal.to_dict(),
                    "rank": entry["rank"],
                    "rationale": entry["rationale"],
                    "tournament_id": entry["tournament_id"],
                    "transcripts": transcripts,
                }
            )
        return items

    @app.get("/api/proposals/{proposal_id}")
    def proposal_detail(proposal_id: str):
        proposal = service.state.archive.get(proposal_id)
        decisions = [
            d.to_dict()
            for d in service.state.archive.decisions
            if d.proposal_id == proposal_id
        ]
        return {"proposal": proposal.to_dict(), "decisions": decisions}

    @app.get("/api/tournaments/{tournament_id}/transcript")
    def tournament_transcript(tournament_id: str):
        record = service.state.tournaments.get(tournament_id)
        if record is None:
            raise NotFoundError(f"unknown tournament {tournament_id!r}")
        return {
            "tournament_id": tournament_id,
            "cycle_id": record["cycle_id"],
            "ranking": record["result"]["ranking"],
            "champion": record["result"]["champion"],
            "transcripts": record["result"]["transcripts"],
        }

    @app.post("/api/proposals/{proposal_id}/decision")
    def post_decision(proposal_id: str, body: DecisionBody):
        decision = service.record_decision(
            proposal_id, body.action, body.feedback, body.actor
        )
        proposal = service.state.archive.get(proposal_id)
        return {"proposal": proposal.to_dict(), "decision": decision.to_dict()}

    @app.get("/api/catalog")
    def catalog():
        entries = []
        for title_id, entry in sorted(service.state.catalog.items()):
            blocking = service.state.qa_blocking(title_id)
            entries.append(
                {
                    **entry,
                    "qa_ready": not blocking,
                    "qa_blocking": blocking,
                    "exported": title_id in service.state.exports,
                }
            )
        return entries

    @app.post("/api/export/{title_id}")
    def export_title(title_id: str, body: ExportBody):
        outcome = service.export_title(
            title_id, approve_token=body.approve_token, actor=body.actor
        )
        return {
            "title_id": outcome.title_id,
            "path": outcome.path,
            "row_count": outcome.row_count,
        }

    return app


def serve(service: ImprintService, *, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the API under uvicorn; raises StateError if the port cannot bind."""
    import uvicorn

    try:
        uvicorn.run(create_app(service), host=host, port=port, log_level="info")
    except OSError as exc:
        raise StateError(f"cannot start service on {host}:{port}: {exc}") from exc
