from pressgauge.clustering.embeddings import (
    EmbeddingVector,
    FixtureEmbeddingProvider,
    HttpEmbeddingProvider,
    cosine_similarity,
    embed,
    text_digest,
)
from pressgauge.clustering.graph import SimilarityGraph, build_graph, threshold_components
from pressgauge.clustering.events import ArticleSeed, ClusterDayResult, cluster_day, precision_pass, recall_pass, title_events
from pressgauge.clustering.facts import cluster_facts

__all__ = [
    "ArticleSeed",
    "ClusterDayResult",
    "EmbeddingVector",
    "FixtureEmbeddingProvider",
    "HttpEmbeddingProvider",
    "SimilarityGraph",
    "build_graph",
    "cluster_day",
    "cluster_facts",
    "cosine_similarity",
    "embed",
    "precision_pass",
    "recall_pass",
    "text_digest",
    "threshold_components",
    "title_events",
]
