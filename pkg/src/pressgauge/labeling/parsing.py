"""Parsing raw model responses into documents.

Models occasionally wrap their JSON in prose or code fences; the parser
strips any non-document prefix/suffix before decoding. Parsing is total in
the sense that every input yields either a document or a typed SchemaError,
never a partial result.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional

from pressgauge.errors import SchemaError

_FENCE = re.compile(r"^```[a-zA-Z]*\s*|\s*```$")


def extract_document(text: str) -> Any:
    """Decode the JSON object or list embedded in a response."""
    stripped = _FENCE.sub("", text.strip()).strip()
    starts = [i for i in (stripped.find("{"), stripped.find("[")) if i != -1]
    if not starts:
        raise SchemaError("response", f"no JSON document in response: {stripped[:80]!r}")
    start = min(starts)
    closer = "}" if stripped[start] == "{" else "]"
    end = stripped.rfind(closer)
    if end <= start:
        raise SchemaError("response", "unterminated JSON document in response")
    try:
        return json.loads(stripped[start : end + 1])
    except json.JSONDecodeError as exc:
        raise SchemaError("response", f"invalid JSON: {exc}") from exc


def require_keys(doc: Any, keys: tuple[str, ...]) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError("response", f"expected a JSON object, got {type(doc).__name__}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(missing[0], "key missing from response")
    return doc


def parse_integer_reply(text: str) -> Optional[int]:
    """The single-integer cluster assignment reply; None when malformed."""
    candidate = text.strip().rstrip(".")
    try:
        return int(candidate)
    except ValueError:
        return None


def parse_integer_list_reply(text: str) -> Optional[list[int]]:
    """The comma-separated integers of the cluster pruning reply."""
    candidate = text.strip().rstrip(".")
    if not candidate:
        return None
    parts = [p.strip() for p in candidate.split(",") if p.strip()]
    try:
        return [int(p) for p in parts]
    except ValueError:
        return None
