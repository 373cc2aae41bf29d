"""Pipeline orchestration: persistence, cycles, milestones, HTTP API."""

from .api import create_app, serve
from .cycle import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_TOP_K,
    CycleArtifacts,
    CycleReport,
    run_cycle_stages,
)
from .milestones import (
    FREQUENCY_DAYS,
    MilestoneTrigger,
    cycle_interval_days,
    milestone_check,
)
from .service import ExportOutcome, ImprintService, load_store_config
from .store import EventLog, ImprintState, ImprintStore, canonical_json, utc_clock

__all__ = [
    "CycleArtifacts",
    "CycleReport",
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_TOP_K",
    "EventLog",
    "ExportOutcome",
    "FREQUENCY_DAYS",
    "ImprintService",
    "ImprintState",
    "ImprintStore",
    "MilestoneTrigger",
    "canonical_json",
    "create_app",
    "cycle_interval_days",
    "load_store_config",
    "milestone_check",
    "run_cycle_stages",
    "serve",
    "utc_clock",
]
