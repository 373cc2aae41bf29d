"""Automation milestones and cycle scheduling."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Iterable, Sequence

from ..errors import UsageError

#: Scheduling interval per configured cycle frequency, in days. "biannual"
#: reads as twice-yearly.
FREQUENCY_DAYS = {
    "monthly": 30,
    "quarterly": 91,
    "biannual": 182,
    "annual": 365,
}

DAYS_PER_YEAR = 365


@dataclass(frozen=True)
class MilestoneTrigger:
    kind: str  # "book_count" or "anniversary"
    value: int  # threshold books, or years
    fired_at: datetime

    @property
    def key(self) -> tuple[str, int]:
        return (self.kind, self.value)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "fired_at": self.fired_at.isoformat()}


def cycle_interval_days(frequency: str) -> int:
    try:
        return FREQUENCY_DAYS[frequency]
    except KeyError:
        raise UsageError(
            f"unknown cycle frequency {frequency!r}; known: {', '.join(FREQUENCY_DAYS)}"
        ) from None


def milestone_check(
    catalog_size: int,
    elapsed: timedelta,
    fired: Iterable[tuple[str, int]],
    *,
    book_thresholds: Sequence[int] = (10, 25, 50),
    anniversary_years: Sequence[int] = (1, 2),
    now: datetime | None = None,
) -> list[MilestoneTrigger]:
    """Thresholds crossed and not yet fired; each fires at most once."""
    fired_keys = set(fired)
    stamp = now or datetime.now().astimezone()
    triggers: list[MilestoneTrigger] = []
    for threshold in book_thresholds:
        key = ("book_count", int(threshold))
        if catalog_size >= threshold and key not in fired_keys:
            triggers.append(MilestoneTrigger("book_count", int(threshold), stamp))
    for years in anniversary_years:
        key = ("anniversary", int(years))
        if elapsed >= timedelta(days=DAYS_PER_YEAR * years) and key not in fired_keys:
            triggers.append(MilestoneTrigger("anniversary", int(years), stamp))
    return triggers
