"""Rendering aggregate results as aligned text tables and CSV."""

from __future__ import annotations

import csv
import io
from typing import Sequence

from pressgauge.analytics.aggregate import AggregateCell, AggregateQuery


def table_header(query: AggregateQuery) -> list[str]:
    return [*query.group_by, query.measure, "n"]


def _cell_rows(query: AggregateQuery, cells: Sequence[AggregateCell]) -> list[list[str]]:
    rows = []
    for cell in cells:
        value = f"{cell.value:.6g}" if query.measure != "count" else str(int(cell.value))
        rows.append([*cell.key, value, str(cell.n)])
    return rows


def render_table(query: AggregateQuery, cells: Sequence[AggregateCell]) -> str:
    header = table_header(query)
    rows = [header] + _cell_rows(query, cells)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(col.ljust(width) for col, width in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines)


def render_csv(query: AggregateQuery, cells: Sequence[AggregateCell]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(table_header(query))
    for cell in cells:
        writer.writerow([*cell.key, cell.value if query.measure != "count" else int(cell.value), cell.n])
    return buffer.getvalue()
