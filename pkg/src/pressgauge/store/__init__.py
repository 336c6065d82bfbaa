from pressgauge.store.db import VersionedStore
from pressgauge.store.views import article_rows, event_assignments, load_event_table
from pressgauge.store.runs import PipelineRun, RunError, run_day

__all__ = [
    "PipelineRun",
    "RunError",
    "VersionedStore",
    "article_rows",
    "event_assignments",
    "load_event_table",
    "run_day",
]
