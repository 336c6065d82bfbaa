from pressgauge.core.types import (
    Article,
    EventCluster,
    FactCluster,
    LabelSet,
    LikertScore,
    Publisher,
    QuoteRecord,
    SentenceRecord,
    SnapshotSpec,
    ValidationResponse,
    ValidationTask,
)
from pressgauge.core.hierarchy import TopicHierarchy, hierarchy_add, load_default_hierarchy
from pressgauge.core.schema import validate_label_set, validate_quote_record, validate_sentence_records

__all__ = [
    "Article",
    "EventCluster",
    "FactCluster",
    "LabelSet",
    "LikertScore",
    "Publisher",
    "QuoteRecord",
    "SentenceRecord",
    "SnapshotSpec",
    "TopicHierarchy",
    "ValidationResponse",
    "ValidationTask",
    "hierarchy_add",
    "load_default_hierarchy",
    "validate_label_set",
    "validate_quote_record",
    "validate_sentence_records",
]
