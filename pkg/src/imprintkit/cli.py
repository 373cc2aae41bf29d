"""Command line interface for the imprint engine.

A store directory holds the config hierarchy (``config/publisher.json``,
``config/imprint.json``, optional ``config/title.json``), the event log, and
exports. Commands that run the pipeline default to the deterministic mock
backends so everything works offline; live model backends are wired by the
embedding application.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .codex import load_quotations
from .config import Level, load_config_file, resolve, validate
from .errors import GateError, ImprintError, ResolutionError
from .qa import FixtureChecker
from .service import ImprintService, cycle_interval_days

_STORE_OPTION = click.option(
    "--store",
    "store_dir",
    envvar="IMPRINT_STORE",
    default="./imprint-store",
    show_default=True,
    help="Store directory (env: IMPRINT_STORE).",
)
_TOKEN_OPTION = click.option(
    "--approve-token",
    envvar="IMPRINT_APPROVE_TOKEN",
    default=None,
    help="Shared human approval token (env: IMPRINT_APPROVE_TOKEN).",
)


@click.group()
@click.version_option(__version__)
def main():
    """Operate an AI-assisted publishing imprint."""


# -- config -------------------------------------------------------------------


@main.group()
def config():
    """Configuration hierarchy commands."""


@config.command("validate")
@click.argument("publisher", type=click.Path(exists=True))
@click.argument("imprint", type=click.Path(exists=True))
@click.argument("title", type=click.Path(exists=True), required=False)
def config_validate(publisher, imprint, title):
    """Resolve and validate the three-level hierarchy.

    Exits 0 exactly when the report passes; findings print one per line as
    ``LAYER severity path: message``.
    """
    from .config import ConfigNode

    pub = load_config_file(publisher, Level.PUBLISHER)
    imp = load_config_file(imprint, Level.IMPRINT)
    tit = (
        load_config_file(title, Level.TITLE)
        if title
        else ConfigNode(level=Level.TITLE)
    )
    parse_findings = [*pub.findings, *imp.findings, *tit.findings]
    for finding in parse_findings:
        click.echo(finding.render())
    try:
        cfg = resolve(pub, imp, tit)
    except ResolutionError as exc:
        for path in exc.missing_paths:
            click.echo(f"SYNTACTIC error {path}: required field undefined at every level")
        sys.exit(1)
    report = validate(cfg)
    for line in report.render_lines():
        click.echo(line)
    passed = report.passed and not any(f.severity.value == "error" for f in parse_findings)
    sys.exit(0 if passed else 1)


# -- ideation ------------------------------------------------------------------


@main.group()
def ideate():
    """Proposal generation commands."""


@ideate.command("run")
@_STORE_OPTION
@click.option("--batch", "batch_size", type=int, default=None, help="Batch size.")
@click.option("--seed", type=int, default=0, show_default=True)
def ideate_run(store_dir, batch_size, seed):
    """Run one full ideation cycle (generate, dedup, tournament, flag)."""
    service = ImprintService.open(store_dir, seed=seed)
    report = service.run_cycle(seed, batch_size=batch_size)
    click.echo(json.dumps(report.to_dict(), indent=2))


@main.group()
def tournament():
    """Tournament inspection."""


@tournament.command("show")
@_STORE_OPTION
@click.argument("tournament_id")
def tournament_show(store_dir, tournament_id):
    """Print a tournament's ranking and full transcripts."""
    service = ImprintService.open(store_dir)
    record = service.state.tournaments.get(tournament_id)
    if record is None:
        raise click.ClickException(f"unknown tournament {tournament_id!r}")
    result = record["result"]
    click.echo(f"champion: {result['champion']}")
    for rank, pid in enumerate(result["ranking"], start=1):
        click.echo(f"{rank:3d}. {pid}")
    for match in result["transcripts"]:
        click.echo(
            f"round {match['round_number']}: {match['a']} vs {match['b']} "
            f"-> {match['winner']}  ({match['rationale']})"
        )


@main.command("decide")
@_STORE_OPTION
@click.argument("proposal_id")
@click.option("--action", required=True,
              type=click.Choice(["approve", "request_modifications",
                                 "return_for_refinement", "reject"]))
@click.option("--feedback", default="", help="Required for every action except approve.")
@click.option("--actor", default="editor", show_default=True)
def decide(store_dir, proposal_id, action, feedback, actor):
    """Record a human editorial decision on a proposal."""
    service = ImprintService.open(store_dir)
    decision = service.record_decision(proposal_id, action, feedback, actor)
    proposal = service.state.archive.get(proposal_id)
    click.echo(f"{proposal_id}: {decision.action.value} -> status {proposal.status.value}")


# -- QA and export ----------------------------------------------------------------


@main.group()
def qa():
    """Verification and QA commands."""


@qa.command("verify")
@_STORE_OPTION
@click.argument("title_id")
@click.option("--quotations", "quotations_path", type=click.Path(exists=True), required=True,
              help="Quotation JSON file for this title.")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), default=None,
              help="Fixture corpus JSON (text -> evidence). Omitted: nothing verifies.")
def qa_verify(store_dir, title_id, quotations_path, corpus_path):
    """Verify a title's quotations and record the results."""
    service = ImprintService.open(store_dir)
    quotations = load_quotations(quotations_path)
    corpus = json.loads(Path(corpus_path).read_text("utf-8")) if corpus_path else {}
    records = service.record_verification(title_id, quotations, FixtureChecker(corpus))
    verified = sum(1 for r in records if r.status.value == "verified")
    for record in records:
        click.echo(record.appendix_entry)
    click.echo(f"{verified}/{len(records)} verified")
    sys.exit(0 if verified == len(records) else 1)


@main.group()
def export():
    """Distribution exports (human gate enforced)."""


@export.command("csv")
@_STORE_OPTION
@_TOKEN_OPTION
@click.argument("title_ids", nargs=-1, required=True)
@click.option("--actor", default="", help="Human approving the submission.")
def export_csv(store_dir, approve_token, title_ids, actor):
    """Export distribution CSV feeds for QA-green titles."""
    service = ImprintService.open(store_dir, approve_token=approve_token)
    failures = 0
    for title_id in title_ids:
        try:
            outcome = service.export_title(
                title_id, approve_token=approve_token or "", actor=actor
            )
        except GateError as exc:
            click.echo(f"{title_id}: GATE REFUSED - {exc}", err=True)
            failures += 1
        except ImprintError as exc:
            click.echo(f"{title_id}: REFUSED - {exc}", err=True)
            failures += 1
        else:
            click.echo(f"{title_id}: exported {outcome.row_count} row(s) -> {outcome.path}")
    sys.exit(0 if failures == 0 else 3)


# -- service ---------------------------------------------------------------------


@main.group()
def cycle():
    """Scheduled cycle commands."""


@cycle.command("run")
@_STORE_OPTION
@click.option("--seed", type=int, required=True)
@click.option("--batch", "batch_size", type=int, default=None)
def cycle_run(store_dir, seed, batch_size):
    """Run one scheduled ideation cycle."""
    service = ImprintService.open(store_dir, seed=seed)
    report = service.run_cycle(seed, batch_size=batch_size)
    service.check_milestones()
    click.echo(json.dumps(report.to_dict(), indent=2))


@main.command("status")
@_STORE_OPTION
def status(store_dir):
    """Print a store summary."""
    service = ImprintService.open(store_dir)
    summary = service.status()
    summary["cycle_interval_days"] = cycle_interval_days(
        service.cfg["automation.frequency"]
    )
    click.echo(json.dumps(summary, indent=2))


@main.command("serve")
@_STORE_OPTION
@_TOKEN_OPTION
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve_command(store_dir, approve_token, port, host):
    """Serve the review API over HTTP."""
    from .service import serve

    service = ImprintService.open(store_dir, approve_token=approve_token)
    serve(service, host=host, port=port)


if __name__ == "__main__":
    main()
