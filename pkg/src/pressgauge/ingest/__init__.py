from pressgauge.ingest.prominence import HomepageSnapshot, SnapshotItem, prominence_score, rank_snapshot
from pressgauge.ingest.cleaning import CleaningDictionary, clean_text, load_default_dictionary
from pressgauge.ingest.fetch import CleanDoc, FixtureFetcher, LiveFetcher, fetch_and_clean
from pressgauge.ingest.dedupe import canonical_url, dedupe_and_merge
from pressgauge.ingest.schedule import jobs_for_day, snapshot_times

__all__ = [
    "CleanDoc",
    "CleaningDictionary",
    "FixtureFetcher",
    "HomepageSnapshot",
    "LiveFetcher",
    "SnapshotItem",
    "canonical_url",
    "clean_text",
    "dedupe_and_merge",
    "fetch_and_clean",
    "jobs_for_day",
    "load_default_dictionary",
    "prominence_score",
    "rank_snapshot",
    "snapshot_times",
]
