"""Daily event clustering with model-assisted refinement.

The flow for one calendar day:

1. embed every article (headline prefixed to the body by default),
2. all-pairs similarity graph, components above the article threshold,
3. give each component a thematic title,
4. recall pass: offer every unclustered article to the day's themes
   (assignment only ever *adds* members),
5. precision pass: ask, per cluster, which headlines do not belong
   (pruning only ever *removes* members; a cluster that shrinks below the
   minimum size dissolves back into singletons).

Every addition and removal is logged, so the final membership provably
equals ``components ∪ additions ∖ removals`` and replays are auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from pressgauge.clustering.embeddings import EmbeddingProvider, embed
from pressgauge.clustering.graph import build_graph, threshold_components
from pressgauge.config import ClusterConfig, ProviderSettings
from pressgauge.core.types import EventCluster
from pressgauge.labeling.parsing import extract_document, parse_integer_list_reply, parse_integer_reply, require_keys
from pressgauge.labeling.prompts import PromptTemplate, format_numbered_lines, load_templates
from pressgauge.labeling.providers import LlmProvider


@dataclass(frozen=True)
class ArticleSeed:
    """What clustering needs to know about an article.

    Dead-lettered articles still carry a headline and (possibly empty)
    takeaways, so they participate in clustering like everything else.
    """

    article_id: str
    title: str
    body: str
    takeaways: str = ""

    def embedding_text(self, title_prefix: bool) -> str:
        if title_prefix and self.title:
            return f"{self.title}. {self.body}"
        return self.body


@dataclass
class ThemedCluster:
    index: int  # 1-based theme number used in refinement prompts
    theme: str
    theme_short: str
    members: set[str]
    theme_short_truncated: bool = False


@dataclass
class RefinementLog:
    components: list[list[str]] = field(default_factory=list)
    additions: list[tuple[str, int]] = field(default_factory=list)  # (article_id, theme index)
    removals: list[tuple[str, int]] = field(default_factory=list)
    dissolved: list[int] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "components": self.components,
            "additions": [list(a) for a in self.additions],
            "removals": [list(r) for r in self.removals],
            "dissolved": self.dissolved,
            "warnings": self.warnings,
        }


@dataclass
class ClusterDayResult:
    day: str
    events: list[EventCluster]
    unclustered: frozenset[str]
    log: RefinementLog
    truncated_embeddings: frozenset[str]


def _titles_of(members: Sequence[str], titles: dict[str, str]) -> list[str]:
    return [titles[m] for m in sorted(members)]


def _shorten(theme_short: str, limit: int = EventCluster.MAX_SHORT_WORDS) -> tuple[str, bool]:
    words = theme_short.split()
    if len(words) <= limit:
        return theme_short, False
    return " ".join(words[:limit]), True


def title_events(
    clusters: Sequence[frozenset[str]],
    titles: dict[str, str],
    provider: LlmProvider,
    model_id: str,
    templates: Optional[dict[str, PromptTemplate]] = None,
) -> list[ThemedCluster]:
    """Give every component a theme and a short (<= 5 word) theme."""
    templates = templates or load_templates()
    themed = []
    for index, members in enumerate(clusters, start=1):
        prompt = templates["event_title"].render(article_titles=format_numbered_lines(_titles_of(members, titles)))
        doc = require_keys(extract_document(provider.complete(prompt, model_id)), ("theme", "theme_short"))
        short, truncated = _shorten(str(doc["theme_short"]))
        themed.append(
            ThemedCluster(
                index=index,
                theme=str(doc["theme"]),
                theme_short=short,
                members=set(members),
                theme_short_truncated=truncated,
            )
        )
    return themed


def recall_pass(
    singletons: Sequence[str],
    themed: list[ThemedCluster],
    seeds: dict[str, ArticleSeed],
    provider: LlmProvider,
    model_id: str,
    log: RefinementLog,
    templates: Optional[dict[str, PromptTemplate]] = None,
) -> None:
    """Offer each unclustered article to the day's themes; additions only."""
    if not themed:
        return
    templates = templates or load_templates()
    themes_block = format_numbered_lines([t.theme for t in themed])
    by_index = {t.index: t for t in themed}
    for article_id in sorted(singletons):
        seed = seeds[article_id]
        prompt = templates["cluster_recall"].render(title=seed.title, takeaways=seed.takeaways, themes=themes_block)
        reply = provider.complete(prompt, model_id)
        choice = parse_integer_reply(reply)
        if choice is None:
            log.warnings.append(f"recall: non-integer reply {reply!r} for {article_id}; left unassigned")
            continue
        if choice == -1:
            continue
        if choice not in by_index:
            log.warnings.append(f"recall: theme {choice} out of range for {article_id}; left unassigned")
            continue
        by_index[choice].members.add(article_id)
        log.additions.append((article_id, choice))


def precision_pass(
    themed: list[ThemedCluster],
    titles: dict[str, str],
    provider: LlmProvider,
    model_id: str,
    log: RefinementLog,
    min_cluster_size: int,
    templates: Optional[dict[str, PromptTemplate]] = None,
) -> set[str]:
    """Prune unrelated members; removals only. Returns ids returned to the pool."""
    templates = templates or load_templates()
    returned: set[str] = set()
    for cluster in themed:
        ordered = sorted(cluster.members)
        prompt = templates["cluster_precision"].render(
            theme=cluster.theme, titles=format_numbered_lines([titles[m] for m in ordered])
        )
        reply = provider.complete(prompt, model_id)
        numbers = parse_integer_list_reply(reply)
        if numbers is None:
            log.warnings.append(f"precision: unparseable reply {reply!r} for theme {cluster.index}; cluster unchanged")
            continue
        if numbers == [-1]:
            continue
        for number in numbers:
            if number < 1 or number > len(ordered):
                log.warnings.append(f"precision: index {number} out of range for theme {cluster.index}; ignored")
                continue
            member = ordered[number - 1]
            if member in cluster.members:
                cluster.members.remove(member)
                log.removals.append((member, cluster.index))
                returned.add(member)
        if 0 < len(cluster.members) < min_cluster_size:
            log.dissolved.append(cluster.index)
            for member in sorted(cluster.members):
                log.removals.append((member, cluster.index))
                returned.add(member)
            cluster.members.clear()
    return returned


def cluster_day(
    day: str,
    seeds: Sequence[ArticleSeed],
    embedding_provider: EmbeddingProvider,
    llm_provider: LlmProvider,
    settings: ProviderSettings = ProviderSettings(),
    config: ClusterConfig = ClusterConfig(),
    templates: Optional[dict[str, PromptTemplate]] = None,
) -> ClusterDayResult:
    """Run the full day-level event clustering pipeline."""
    templates = templates or load_templates()
    log = RefinementLog()
    seed_map = {s.article_id: s for s in seeds}
    titles = {s.article_id: s.title for s in seeds}

    keyed_texts = [(s.article_id, s.embedding_text(config.embed_title_prefix)) for s in sorted(seeds, key=lambda s: s.article_id)]
    vectors, truncated = embed(keyed_texts, embedding_provider, settings.max_input_words)
    if not vectors:
        return ClusterDayResult(day=day, events=[], unclustered=frozenset(), log=log, truncated_embeddings=frozenset())

    graph = build_graph(vectors)
    components, singletons = threshold_components(graph, config.article_threshold, config.min_cluster_size)
    log.components = [sorted(c) for c in components]

    themed = title_events(components, titles, llm_provider, settings.classify_model, templates)
    recall_pass(sorted(singletons), themed, seed_map, llm_provider, settings.label_model, log, templates)
    precision_pass(themed, titles, llm_provider, settings.label_model, log, config.min_cluster_size, templates)

    events = []
    ordering = sorted((t for t in themed if t.members), key=lambda t: (-len(t.members), min(t.members)))
    for position, cluster in enumerate(ordering, start=1):
        events.append(
            EventCluster(
                event_id=f"{day}-e{position:02d}",
                day=day,
                theme=cluster.theme,
                theme_short=cluster.theme_short,
                member_article_ids=frozenset(cluster.members),
                theme_short_truncated=cluster.theme_short_truncated,
            )
        )

    clustered_now = set().union(*(e.member_article_ids for e in events)) if events else set()
    unclustered = set(seed_map) - clustered_now
    return ClusterDayResult(
        day=day,
        events=events,
        unclustered=frozenset(unclustered),
        log=log,
        truncated_embeddings=frozenset(truncated),
    )
