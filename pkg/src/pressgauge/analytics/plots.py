"""Static chart emission (SVG/PNG files, no interactive app).

Covers the chart families the dashboard shows: grouped counts as horizontal
bars, mean lean/tone by group with a reference line at the overall mean, and
the headline-vs-article scatter against the identity line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from pressgauge.analytics.aggregate import AggregateCell, AggregateQuery, HeadlineDeltaReport


def _key_labels(cells: Sequence[AggregateCell]) -> list[str]:
    return [" / ".join(cell.key) if cell.key else "all" for cell in cells]


def plot_aggregate(query: AggregateQuery, cells: Sequence[AggregateCell], path: str | Path) -> Path:
    """Horizontal bar chart of an aggregate table."""
    path = Path(path)
    labels = _key_labels(cells)
    values = [cell.value for cell in cells]
    height = max(2.0, 0.35 * len(cells) + 1.2)
    fig, ax = plt.subplots(figsize=(9, height))
    ax.barh(labels, values, color="#4878a8")
    ax.invert_yaxis()
    ax.set_xlabel(query.measure)
    if query.measure != "count":
        weighted = [cell.value * cell.n for cell in cells]
        total_n = sum(cell.n for cell in cells)
        if total_n:
            ax.axvline(sum(weighted) / total_n, color="#c0392b", linewidth=1.2, label="overall mean")
            ax.legend(loc="lower right", fontsize=8)
    ax.set_title(f"{query.measure} by {', '.join(query.group_by) or 'all'}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_headline_delta(report: HeadlineDeltaReport, dimension: str, path: str | Path) -> Path:
    """Scatter of headline vs. article means per category, identity line drawn."""
    if dimension not in ("lean", "tone"):
        raise ValueError("dimension must be 'lean' or 'tone'")
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 6))
    xs, ys, sizes, labels = [], [], [], []
    for category, point in report.by_category.items():
        if dimension == "lean":
            xs.append(point.mean_article_lean)
            ys.append(point.mean_headline_lean)
        else:
            xs.append(point.mean_article_tone)
            ys.append(point.mean_headline_tone)
        sizes.append(30 + 6 * point.n)
        labels.append(category)
    ax.scatter(xs, ys, s=sizes, alpha=0.7, color="#4878a8")
    for x, y, label in zip(xs, ys, labels):
        ax.annotate(label, (x, y), fontsize=7, xytext=(3, 3), textcoords="offset points")
    if report.overall:
        ox = report.overall.mean_article_lean if dimension == "lean" else report.overall.mean_article_tone
        oy = report.overall.mean_headline_lean if dimension == "lean" else report.overall.mean_headline_tone
        ax.scatter([ox], [oy], s=90, color="#1b2a4a", label="all articles")
        ax.legend(fontsize=8)
    span = [min(xs + ys + [0]) - 0.5, max(xs + ys + [0]) + 0.5] if xs else [-1, 1]
    ax.plot(span, span, color="gray", linewidth=0.8, linestyle="--")
    ax.set_xlabel(f"average article {dimension}")
    ax.set_ylabel(f"average headline {dimension}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_horserace(counts: dict[str, dict[str, int]], path: str | Path) -> Path:
    """Per-publisher horse-race vs. policy article counts, side by side."""
    path = Path(path)
    publishers = list(counts)
    horserace = [counts[p]["horserace"] for p in publishers]
    policy = [counts[p]["policy"] for p in publishers]
    positions = range(len(publishers))
    fig, ax = plt.subplots(figsize=(9, max(2.0, 0.5 * len(publishers) + 1)))
    ax.barh([p - 0.2 for p in positions], horserace, height=0.4, label="horse race", color="#c77c3c")
    ax.barh([p + 0.2 for p in positions], policy, height=0.4, label="policy", color="#4878a8")
    ax.set_yticks(list(positions), publishers)
    ax.invert_yaxis()
    ax.set_xlabel("articles")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
