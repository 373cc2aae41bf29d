"""Structured audit logging: one JSON record per line, append-only."""

from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable


class AuditLog:
    """Append-only newline-delimited JSON audit trail.

    Thread-safe: a single lock serializes writers. Pass ``path=None`` for an
    in-memory log (tests).
    """

    def __init__(
        self,
        path: str | Path | None = None,
        *,
        clock: Callable[[], datetime] | None = None,
    ):
        self._path = Path(path) if path is not None else None
        self._clock = clock or (lambda: datetime.now(timezone.utc))
        self._lock = threading.Lock()
        self.records: list[dict] = []
        if self._path is not None:
            self._path.parent.mkdir(parents=True, exist_ok=True)

    def record(self, **fields) -> dict:
        entry = {"timestamp": self._clock().isoformat(), **fields}
        line = json.dumps(entry, sort_keys=True, ensure_ascii=False)
        with self._lock:
            self.records.append(entry)
            if self._path is not None:
                with self._path.open("a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
        return entry
