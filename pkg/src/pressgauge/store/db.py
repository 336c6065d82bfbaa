"""Append-only versioned document store on SQLite.

Every write is a new version of (kind, id); nothing is ever updated in
place, which is what makes label corrections auditable and pipeline reruns
idempotent: putting a document whose canonical body equals the latest
version is a no-op. Reads default to the latest version but any historical
version stays retrievable.

SQLite gives the single-writer/many-reader semantics the pipeline needs; a
process-level lock serializes writers within this process.
"""

from __future__ import annotations

import hashlib
import json
import sqlite3
import threading
from pathlib import Path
from typing import Any, Iterator, Optional

_SCHEMA = """
CREATE TABLE IF NOT EXISTS records (
    kind TEXT NOT NULL,
    id TEXT NOT NULL,
    version INTEGER NOT NULL,
    body TEXT NOT NULL,
    written_at TEXT NOT NULL DEFAULT (strftime('%Y-%m-%dT%H:%M:%SZ', 'now')),
    PRIMARY KEY (kind, id, version)
);
CREATE INDEX IF NOT EXISTS records_by_kind ON records (kind, id);
"""

# Bookkeeping kinds excluded from state digests: run records legitimately
# differ between a crashed-and-resumed day and an uninterrupted one.
BOOKKEEPING_KINDS = ("run",)


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class VersionedStore:
    def __init__(self, path: str | Path = ":memory:"):
        self.path = str(path)
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        if self.path != ":memory:":
            self._conn.execute("PRAGMA journal_mode=WAL")
        self._lock = threading.Lock()
        with self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self) -> None:
        self._conn.close()

    # -- writes -----------------------------------------------------------

    def put(self, kind: str, id: str, doc: Any) -> tuple[int, bool]:
        """Append a new version unless the latest body is identical.

        Returns (version, changed).
        """
        body = canonical_json(doc)
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT version, body FROM records WHERE kind=? AND id=? ORDER BY version DESC LIMIT 1",
                (kind, id),
            ).fetchone()
            if row and row[1] == body:
                return row[0], False
            version = (row[0] + 1) if row else 1
            self._conn.execute(
                "INSERT INTO records (kind, id, version, body) VALUES (?, ?, ?, ?)",
                (kind, id, version, body),
            )
            return version, True

    # -- reads ------------------------------------------------------------

    def get(self, kind: str, id: str, version: Optional[int] = None) -> Optional[Any]:
        if version is None:
            row = self._conn.execute(
                "SELECT body FROM records WHERE kind=? AND id=? ORDER BY version DESC LIMIT 1",
                (kind, id),
            ).fetchone()
        else:
            row = self._conn.execute(
                "SELECT body FROM records WHERE kind=? AND id=? AND version=?",
                (kind, id, version),
            ).fetchone()
        return json.loads(row[0]) if row else None

    def latest_version(self, kind: str, id: str) -> Optional[int]:
        row = self._conn.execute(
            "SELECT MAX(version) FROM records WHERE kind=? AND id=?", (kind, id)
        ).fetchone()
        return row[0]

    def versions(self, kind: str, id: str) -> list[int]:
        rows = self._conn.execute(
            "SELECT version FROM records WHERE kind=? AND id=? ORDER BY version", (kind, id)
        ).fetchall()
        return [r[0] for r in rows]

    def ids(self, kind: str) -> list[str]:
        rows = self._conn.execute("SELECT DISTINCT id FROM records WHERE kind=? ORDER BY id", (kind,)).fetchall()
        return [r[0] for r in rows]

    def iter_latest(self, kind: str) -> Iterator[tuple[str, Any]]:
        """(id, latest document) for every id of a kind, one consistent version each."""
        rows = self._conn.execute(
            """
            SELECT r.id, r.body FROM records r
            JOIN (SELECT kind, id, MAX(version) AS v FROM records WHERE kind=? GROUP BY kind, id) latest
              ON r.kind = latest.kind AND r.id = latest.id AND r.version = latest.v
            ORDER BY r.id
            """,
            (kind,),
        ).fetchall()
        for id, body in rows:
            yield id, json.loads(body)

    def count(self, kind: str) -> int:
        row = self._conn.execute("SELECT COUNT(DISTINCT id) FROM records WHERE kind=?", (kind,)).fetchone()
        return row[0]

    # -- integrity ----------------------------------------------------------

    def digest(self, exclude_kinds: tuple[str, ...] = BOOKKEEPING_KINDS) -> str:
        """Content digest of the full store state (all versions, stable order).

        ``written_at`` never participates: two stores that hold the same
        documents digest equal no matter when the writes happened.
        """
        hasher = hashlib.sha256()
        placeholders = ",".join("?" for _ in exclude_kinds) or "''"
        rows = self._conn.execute(
            f"SELECT kind, id, version, body FROM records WHERE kind NOT IN ({placeholders}) ORDER BY kind, id, version",
            exclude_kinds,
        ).fetchall()
        for kind, id, version, body in rows:
            hasher.update(f"{kind}\x00{id}\x00{version}\x00{body}\x01".encode("utf-8"))
        return hasher.hexdigest()
