"""Sources of raw homepage snapshots.

Capturing a live homepage with layout geometry needs a rendering browser and
per-site tuning, so the capture *contract* is what this module pins down: a
source yields raw :class:`SnapshotItem` lists for (publisher, capture time).
The recorded-fixture source is the mandatory implementation every test and
replay uses; wire a renderer-backed source in behind the same protocol to go
live.
"""

from __future__ import annotations

import datetime as dt
import json
from pathlib import Path
from typing import Protocol, Sequence

from pressgauge.ingest.prominence import SnapshotItem


class SnapshotSource(Protocol):
    def capture(self, publisher_id: str, at: dt.datetime) -> Sequence[SnapshotItem]: ...


def snapshot_file_name(at: dt.datetime) -> str:
    return at.strftime("%Y-%m-%dT%H%M") + ".ndjson"


class FixtureSnapshotSource:
    """Reads ``<root>/snapshots/<publisher>/<YYYY-MM-DD>T<HHMM>.ndjson``.

    Each line is one raw item: {"url", "title", "y_offset", "font_size",
    "image_area"}. A missing file means the fixture simply has no snapshot
    for that slot (the capture failed that day), which is reported as an
    empty capture rather than an error.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path_for(self, publisher_id: str, at: dt.datetime) -> Path:
        return self.root / "snapshots" / publisher_id / snapshot_file_name(at)

    def capture(self, publisher_id: str, at: dt.datetime) -> list[SnapshotItem]:
        path = self.path_for(publisher_id, at)
        if not path.exists():
            return []
        items = []
        for line in path.read_text("utf-8").splitlines():
            if line.strip():
                items.append(SnapshotItem.from_doc(json.loads(line)))
        return items
