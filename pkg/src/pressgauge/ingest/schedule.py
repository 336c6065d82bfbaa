"""Snapshot scheduling.

Capture times are wall-clock times in the publisher schedule's timezone
(America/New_York by default), so the 6 AM snapshot stays the 6 AM snapshot
across DST changes. The scheduler is deliberately simple: compute the day's
jobs, run each when its time arrives. Clock and sleep are injectable so a
simulated day can be driven in tests.
"""

from __future__ import annotations

import datetime as dt
import time
from typing import Callable, Iterable, Sequence
from zoneinfo import ZoneInfo

from pressgauge.core.types import Publisher, SnapshotSpec


def snapshot_times(day: dt.date, spec: SnapshotSpec) -> list[dt.datetime]:
    zone = ZoneInfo(spec.timezone)
    out = []
    for hhmm in spec.times_local:
        hour, minute = (int(p) for p in hhmm.split(":"))
        out.append(dt.datetime(day.year, day.month, day.day, hour, minute, tzinfo=zone))
    return out


def jobs_for_day(day: dt.date, publishers: Sequence[Publisher], spec: SnapshotSpec) -> list[tuple[str, dt.datetime]]:
    """Every (publisher_id, capture time) job for one calendar day.

    Exactly ``len(spec.times_local)`` jobs per enabled publisher; disabled
    publishers get none.
    """
    jobs = []
    for when in snapshot_times(day, spec):
        for publisher in publishers:
            if publisher.enabled:
                jobs.append((publisher.id, when))
    return jobs


class SnapshotScheduler:
    """Fires one callback per due job, in time order.

    ``now_fn`` and ``sleep_fn`` default to the real clock; tests inject a
    simulated clock and a sleep that advances it.
    """

    def __init__(
        self,
        callback: Callable[[str, dt.datetime], None],
        now_fn: Callable[[], dt.datetime] | None = None,
        sleep_fn: Callable[[float], None] | None = None,
    ):
        self.callback = callback
        self.now_fn = now_fn or (lambda: dt.datetime.now(dt.timezone.utc))
        self.sleep_fn = sleep_fn or time.sleep

    def run_day(self, day: dt.date, publishers: Iterable[Publisher], spec: SnapshotSpec) -> int:
        """Run every job for ``day`` whose time has not already passed."""
        fired = 0
        jobs = sorted(jobs_for_day(day, list(publishers), spec), key=lambda j: (j[1], j[0]))
        for publisher_id, when in jobs:
            wait = (when - self.now_fn()).total_seconds()
            if wait > 0:
                self.sleep_fn(wait)
            self.callback(publisher_id, when)
            fired += 1
        return fired
