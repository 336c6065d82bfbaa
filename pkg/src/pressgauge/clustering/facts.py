"""Fact clustering inside an event.

Only sentences labeled as factual statements participate. The same
embedding-graph-components machinery runs at a higher similarity threshold,
and each resulting group is summarized into one synthetic sentence of at
most 25 words for the events view.
"""

from __future__ import annotations

from typing import Optional, Sequence

from pressgauge.clustering.embeddings import EmbeddingProvider, embed
from pressgauge.clustering.graph import build_graph, threshold_components
from pressgauge.config import ClusterConfig, ProviderSettings
from pressgauge.core.types import EventCluster, FactCluster
from pressgauge.labeling.parsing import extract_document, require_keys
from pressgauge.labeling.prompts import PromptTemplate, format_numbered_lines, load_templates
from pressgauge.labeling.providers import LlmProvider

FactSentence = tuple[str, int, str]  # (article_id, sentence index, text)


def _sentence_key(article_id: str, index: int) -> str:
    return f"{article_id}#{index}"


def _parse_key(key: str) -> tuple[str, int]:
    article_id, _, index = key.rpartition("#")
    return article_id, int(index)


def _cap_words(sentence: str, limit: int = FactCluster.MAX_WORDS) -> tuple[str, bool]:
    words = sentence.split()
    if len(words) <= limit:
        return sentence, False
    return " ".join(words[:limit]), True


def cluster_facts(
    event: EventCluster,
    fact_sentences: Sequence[FactSentence],
    embedding_provider: EmbeddingProvider,
    llm_provider: LlmProvider,
    settings: ProviderSettings = ProviderSettings(),
    config: ClusterConfig = ClusterConfig(),
    templates: Optional[dict[str, PromptTemplate]] = None,
) -> list[FactCluster]:
    """Group an event's factual sentences and summarize each group.

    ``fact_sentences`` must already be filtered to type == "fact" and to
    articles inside the event; both are re-checked here because fact purity
    is an invariant of the output, not a hope about the input.
    """
    templates = templates or load_templates()
    members = event.member_article_ids
    filtered = [(a, i, t) for (a, i, t) in fact_sentences if a in members]
    if not filtered:
        return []

    keyed_texts = sorted(((_sentence_key(a, i), text) for a, i, text in filtered), key=lambda kv: kv[0])
    texts_by_key = dict(keyed_texts)
    vectors, _ = embed(keyed_texts, embedding_provider, settings.max_input_words)
    graph = build_graph(vectors)
    groups, _ = threshold_components(graph, config.fact_threshold, config.min_cluster_size)

    clusters = []
    for position, group in enumerate(sorted(groups, key=lambda g: (-len(g), min(g))), start=1):
        ordered_keys = sorted(group)
        prompt = templates["fact_summary"].render(sentence_list=format_numbered_lines([texts_by_key[k] for k in ordered_keys]))
        doc = require_keys(extract_document(llm_provider.complete(prompt, settings.classify_model)), ("synthetic_sentence",))
        sentence, truncated = _cap_words(str(doc["synthetic_sentence"]))
        clusters.append(
            FactCluster(
                event_id=event.event_id,
                fact_id=f"{event.event_id}-f{position:02d}",
                synthetic_sentence=sentence,
                member_sentences=frozenset(_parse_key(k) for k in ordered_keys),
                truncated=truncated,
            )
        )
    return clusters
