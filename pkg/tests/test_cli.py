"""CLI surface: config validation exit codes, cycle runs, decisions, exports."""

from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest
from click.testing import CliRunner

from imprintkit.cli import main

FIXTURES = Path(__file__).parent / "fixtures" / "config"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def store_dir(tmp_path):
    store = tmp_path / "store"
    (store / "config").mkdir(parents=True)
    for name in ("publisher.json", "imprint.json", "title.json"):
        shutil.copy(FIXTURES / name, store / "config" / name)
    return store


class TestConfigValidate:
    def test_fixture_hierarchy_exits_zero(self, runner):
        result = runner.invoke(
            main,
            [
                "config",
                "validate",
                str(FIXTURES / "publisher.json"),
                str(FIXTURES / "imprint.json"),
                str(FIXTURES / "title.json"),
            ],
        )
        assert result.exit_code == 0, result.output

    def test_broken_config_prints_finding_lines_and_fails(self, runner, tmp_path):
        bad = json.loads((FIXTURES / "imprint.json").read_text())
        bad["pricing"]["wholesale_discount_pct"]["US"] = 140
        bad_path = tmp_path / "imprint.json"
        bad_path.write_text(json.dumps(bad))
        result = runner.invoke(
            main,
            ["config", "validate", str(FIXTURES / "publisher.json"), str(bad_path)],
        )
        assert result.exit_code == 1
        assert "SEMANTIC error pricing.wholesale_discount_pct.US" in result.output

    def test_missing_required_fields_reported(self, runner, tmp_path):
        empty = tmp_path / "empty.json"
        empty.write_text("{}")
        result = runner.invoke(
            main, ["config", "validate", str(empty), str(empty)]
        )
        assert result.exit_code == 1
        assert "required field undefined" in result.output


class TestPipelineCommands:
    def test_cycle_run_emits_report(self, runner, store_dir):
        result = runner.invoke(
            main, ["cycle", "run", "--store", str(store_dir), "--seed", "11", "--batch", "8"]
        )
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["cycle_id"] == "cycle-0001"
        assert report["generated_count"] == 8
        assert report["awaiting_review"] is True

    def test_ideate_run_then_tournament_show_and_decide(self, runner, store_dir):
        result = runner.invoke(
            main, ["ideate", "run", "--store", str(store_dir), "--seed", "2", "--batch", "8"]
        )
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)

        shown = runner.invoke(
            main, ["tournament", "show", "--store", str(store_dir), report["tournament_id"]]
        )
        assert shown.exit_code == 0, shown.output
        assert "champion:" in shown.output

        pid = report["flagged_proposal_ids"][0]
        decided = runner.invoke(
            main,
            ["decide", "--store", str(store_dir), pid, "--action", "approve"],
        )
        assert decided.exit_code == 0, decided.output
        assert "status approved" in decided.output

    def test_reject_requires_feedback(self, runner, store_dir):
        result = runner.invoke(
            main, ["ideate", "run", "--store", str(store_dir), "--seed", "2", "--batch", "8"]
        )
        pid = json.loads(result.output)["flagged_proposal_ids"][0]
        refused = runner.invoke(
            main, ["decide", "--store", str(store_dir), pid, "--action", "reject"]
        )
        assert refused.exit_code != 0

    def test_status_summary(self, runner, store_dir):
        runner.invoke(
            main, ["cycle", "run", "--store", str(store_dir), "--seed", "3", "--batch", "8"]
        )
        result = runner.invoke(main, ["status", "--store", str(store_dir)])
        assert result.exit_code == 0
        summary = json.loads(result.output)
        assert summary["cycles"] == 1
        assert summary["cycle_interval_days"] == 182


class TestQaAndExportCommands:
    def _approved_title(self, runner, store_dir) -> str:
        result = runner.invoke(
            main, ["ideate", "run", "--store", str(store_dir), "--seed", "4", "--batch", "8"]
        )
        pid = json.loads(result.output)["flagged_proposal_ids"][0]
        runner.invoke(main, ["decide", "--store", str(store_dir), pid, "--action", "approve"])
        return f"proj-{pid}"

    def _write_quotations(self, tmp_path, verified_corpus=True):
        quotations = [
            {
                "text": f"Quotation {i} about close attention.",
                "author": "Kim",
                "source_work": "On Quiet",
                "citation": f"Kim. 200{i}. On Quiet.",
            }
            for i in range(3)
        ]
        qpath = tmp_path / "quotations.json"
        qpath.write_text(json.dumps(quotations))
        corpus = {q["text"]: "page 9" for q in quotations} if verified_corpus else {}
        cpath = tmp_path / "corpus.json"
        cpath.write_text(json.dumps(corpus))
        return qpath, cpath

    def test_export_without_token_refused_no_file(self, runner, store_dir, tmp_path):
        title_id = self._approved_title(runner, store_dir)
        qpath, cpath = self._write_quotations(tmp_path)
        verified = runner.invoke(
            main,
            ["qa", "verify", "--store", str(store_dir), title_id,
             "--quotations", str(qpath), "--corpus", str(cpath)],
        )
        assert verified.exit_code == 0, verified.output

        refused = runner.invoke(
            main, ["export", "csv", "--store", str(store_dir), title_id, "--actor", "editor"],
            env={"IMPRINT_APPROVE_TOKEN": ""},
        )
        assert refused.exit_code == 3
        assert "GATE REFUSED" in refused.output
        assert not (store_dir / "exports" / f"{title_id}.csv").exists()

    def test_export_with_token_writes_feed(self, runner, store_dir, tmp_path):
        title_id = self._approved_title(runner, store_dir)
        qpath, cpath = self._write_quotations(tmp_path)
        runner.invoke(
            main,
            ["qa", "verify", "--store", str(store_dir), title_id,
             "--quotations", str(qpath), "--corpus", str(cpath)],
        )
        result = runner.invoke(
            main,
            ["export", "csv", "--store", str(store_dir), "--approve-token", "tok",
             title_id, "--actor", "editor"],
        )
        assert result.exit_code == 0, result.output
        feed = store_dir / "exports" / f"{title_id}.csv"
        assert feed.exists()
        assert feed.read_bytes().startswith(b'"isbn"')

    def test_unverified_title_refused_even_with_token(self, runner, store_dir):
        title_id = self._approved_title(runner, store_dir)
        result = runner.invoke(
            main,
            ["export", "csv", "--store", str(store_dir), "--approve-token", "tok",
             title_id, "--actor", "editor"],
        )
        assert result.exit_code == 3
        assert "REFUSED" in result.output
