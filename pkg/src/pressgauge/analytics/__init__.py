from pressgauge.analytics.focus import FocusScore, article_focus, focus_value
from pressgauge.analytics.aggregate import AggregateQuery, aggregate, headline_delta, horserace_vs_policy

__all__ = [
    "AggregateQuery",
    "FocusScore",
    "aggregate",
    "article_focus",
    "focus_value",
    "headline_delta",
    "horserace_vs_policy",
]
